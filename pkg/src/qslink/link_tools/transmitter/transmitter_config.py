class TransmitterConfig:
    def __init__(self):
        # Bacteria per node
        self.BACTERIA = 100

        # Relative parameter noise sigma_gamma^2/gamma^2 and sigma_kappa^2/kappa^2
        # (together with the distance term they make up sigma0^2 = 0.1)
        self.GAMMA_REL_SQ = 0.05
        self.KAPPA_REL_SQ = 0.05

        # Above this relative parameter noise the first-order expansion is unreliable
        self.FIRST_ORDER_LIMIT = 0.5
