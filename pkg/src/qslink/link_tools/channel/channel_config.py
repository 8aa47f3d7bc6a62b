class ChannelConfig:
    def __init__(self):
        # Diffusion coefficient (cm^2/s), typical for small molecules in water
        self.DIFFUSION = 1e-5

        # Nominal transmitter-receiver distance (um)
        self.DISTANCE_UM = 50.0

        # sigma_r^2 / r0^2
        self.DISTANCE_REL_SQ = 0.0

        # Pulse duration t0 (s); inf means the transmitter never stops
        self.PULSE_DURATION = float("inf")

        # Above this sigma_r^2 / r0^2 the first-order distance expansion is unreliable
        self.DISTANCE_REL_LIMIT = 0.25

        # Channel dump: time horizon (s) and number of steps
        self.DUMP_T_END = 600.0
        self.DUMP_STEPS = 120

        # Stimulus (nM) and pulse length (s) used by the dump when the channel pulse is unbounded
        self.DUMP_STIMULUS_NM = 250.0
        self.DUMP_PULSE_S = 300.0

        # Quadrature settings for the numeric pulse convolution
        self.QUAD_LIMIT = 200
        self.QUAD_EPSREL = 1e-10
