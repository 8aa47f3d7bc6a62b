class ModulationConfig:
    def __init__(self):
        # Constellation sizes swept by default
        self.M_LIST = [2, 4, 8, 16, 32]

        # A_max grid (nM) for the error / rate curves
        self.AMAX_GRID_NM = [50.0, 100.0, 200.0, 400.0, 800.0]

        # Output bins of the m-level channel used for the symbol weights and the rate
        self.K_OUT = 2001

        # Use one-sided decision errors at the two outer symbols
        self.ONE_SIDED_ENDPOINTS = False
