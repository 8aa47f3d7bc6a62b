class MonteCarloConfig:
    def __init__(self):
        # Trials per experiment and the root seed of every random stream
        self.TRIALS = 100000
        self.SEED = 42

        # Trials per random stream; results do not depend on the thread count
        self.CHUNK_SIZE = 1000

        # Clamp every sampled entrapment probability to [0, 1]
        self.TRUNCATE_PROBABILITIES = True

        # Warn when more than this share of sampled probabilities needed clamping
        self.CLAMP_WARN_RATE = 1e-4

        # Trials per symbol when estimating hard-decision error rates
        self.SYMBOL_TRIALS = 20000

        # Below this many trials statistical checks are reported as underpowered
        self.MIN_POWERED_TRIALS = 1000

        # Validation report: operating points, symbol checks and tolerances
        self.VALIDATE_P0 = [0.1, 0.3, 0.5, 0.615]
        self.SYMBOL_M = [8, 32]
        self.SYMBOL_A_MAX_NM = 400.0
        self.MEAN_REL_TOL = 0.01
        self.VARIANCE_REL_TOL = 0.10
        self.SYMBOL_REL_TOL = 0.25
        self.TRANSMITTER_RATIO_LIMIT = 0.05
