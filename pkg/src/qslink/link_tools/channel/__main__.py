import sys

from tabulate import tabulate

from .channel import ChannelParams, channel_table, cm_to_um

try:
    r_um = float(sys.argv[1]) if len(sys.argv) > 1 else 50.0
    ch = ChannelParams.from_microns(r_um, t0=300.0)
    print(f"r = {cm_to_um(ch.r0):.1f} um, D = {ch.D} cm^2/s, diffusion time r^2/4D = {ch.diffusion_time:.1f} s")
    rows = channel_table(ch.r0, 1.0, ch, t_end=600.0, steps=12)
    print(tabulate(rows, headers=["t (s)", "rise ratio", "constant", "pulse"], tablefmt="github", floatfmt=".5g"))
except ValueError as ex:
    print(f"Error: {ex}")
    sys.exit(2)
