class CapacityConfig:
    def __init__(self):
        # Input levels over [0, p_max] and output bins over the padded [0, 1]
        self.K_IN = 201
        self.K_OUT = 2001

        # Output support padding, in conditional standard deviations
        self.TAIL_SIGMAS = 4.0

        # Blahut-Arimoto stopping gap (bits) and iteration budget
        self.GAP_BITS = 1e-6
        self.MAX_ITER = 10000

        # Default sweeps
        self.AMAX_GRID_NM = [50.0, 100.0, 200.0, 400.0, 800.0]
        self.N_SWEEP = [50, 100, 200]
        self.SIGMA0_SWEEP = [0.05, 0.1, 0.2, 0.4]
