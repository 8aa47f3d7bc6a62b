import sys

from tabulate import tabulate

from .kinetics import KineticParams, binding_time_constant, steady_binding_probability, transient_table

try:
    A = float(sys.argv[1]) if len(sys.argv) > 1 else 100.0
    k = KineticParams.from_config()
    print(f"Binding at A = {A} nM: p* = {steady_binding_probability(A, k):.4f}, "
          f"time constant {binding_time_constant(A, k):.2f} min")
    rows = transient_table(A, k, t_end=360.0, steps=12)
    print(tabulate(rows, headers=["t (min)", "p", "S1", "S2"], tablefmt="github", floatfmt=".5g"))
except ValueError as ex:
    print(f"Error: {ex}")
    sys.exit(2)
