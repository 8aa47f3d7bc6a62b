class KineticsConfig:
    def __init__(self):
        # Input gain gamma (per nM per min)
        self.GAMMA = 0.0004

        # Dissociation rate kappa (per min)
        self.KAPPA = 0.1

        # Expression cascade constants. b1 and b2 follow the quoted time
        # constants T2 = 1/b1 ~ 1 hr and T3 = 1/b2 ~ 10 min; a0, a1, b0 are
        # not published and default to 1.
        self.A0 = 1.0
        self.A1 = 1.0
        self.B0 = 1.0
        self.B1 = 1.0 / 60.0
        self.B2 = 0.1

        # Molecule output per activated receptor (nM * cm^3 / s). Puts the
        # saturation concentration near 4000 nM at n = 50, r0 = 50 um, above
        # every default A_max
        self.ALPHA = 1e-6

        # Ligand receptors per bacterium
        self.RECEPTORS = 50

        # Two rates closer than this (relative) use the confluent cascade form
        self.CONFLUENT_RTOL = 1e-9

        # Transient dump: horizon (min) and number of steps
        self.DUMP_T_END_MIN = 360.0
        self.DUMP_STEPS = 180
