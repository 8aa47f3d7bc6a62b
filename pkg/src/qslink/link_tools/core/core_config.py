class CoreConfig:
    def __init__(self):
        # Default absolute tolerance for root finding and BA stopping (bits)
        self.ABS_TOL = 1e-6

        # Default relative tolerance
        self.REL_TOL = 1e-9

        # Iteration budget for bisection / Blahut-Arimoto
        self.MAX_ITER = 10000

        # Target residual for inverse_erfc
        self.ERFC_RESIDUAL = 1e-10
