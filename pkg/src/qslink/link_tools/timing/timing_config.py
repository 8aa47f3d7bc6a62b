class TimingConfig:
    def __init__(self):
        # Share of the steady concentration that counts as "arrived" / "cleared"
        self.RISE_THRESHOLD = 0.9
        self.FALL_THRESHOLD = 0.1

        # Each reception time constant is waited out this many times
        self.DELAY_MULTIPLE = 3.0

        # Concentration (nM) at which the entrapment time constant is evaluated
        self.RECEPTION_CONCENTRATION_NM = 100.0

        # Default grid for the bits-per-hour table
        self.DISTANCE_GRID_UM = [10.0, 50.0, 100.0]
        self.N_SWEEP = [50, 100, 200]
        self.A_MAX_NM = 400.0

        # Doublings allowed while bracketing the fall-time crossing
        self.MAX_BRACKET_DOUBLINGS = 200
