"""Three-site chain with a spin-1 centre: a dead channel until corrected.

Here f(t) = -e^{iBt} sin^2(J t / 2).  At B = 0 the amplitude sits on the
negative real axis, cos(gamma) = -1, and the average fidelity never beats
1/2 (no communication).  Either a phase-flip gate at the receiver or a tuned
field turns the same chain into a perfect channel.
"""

import math

import numpy as np

from spintransfer import (
    SearchConfig,
    average_fidelity,
    corrected_average_fidelity,
    maximize_fidelity,
    preset,
    time_series,
    tune_uniform_field,
)

J = 1.0
T_C = math.pi / J

print("=== bare channel (B = 0) is useless on average ===")
spec = preset("sec2-three-spin-center", J, 0.0)
best = maximize_fidelity(spec, SearchConfig(t_max=4.0 * math.pi / J))
print(f"max Fbar over four periods = {best.fbar:.9f} (attained at t = {best.best_t:.2e})")

grid = np.linspace(0.0, 2.0 * T_C, 9)
print("      t      |f|     gamma     Fbar")
for rec in time_series(spec, grid):
    print(f"  {rec.t:7.3f}  {abs(rec.f):.4f}  {rec.gamma:+.4f}  {average_fidelity(rec.f):.4f}")

print()
print("=== a Z gate at the receiver rescues it ===")
rec = time_series(spec, [T_C])[0]
corrected, phase = corrected_average_fidelity(rec.f)
print(f"f(t_c) = {rec.f:.6f}, gate phase = {phase:+.6f} (|phase| = pi: a Z gate)")
print(f"corrected Fbar at t_c = pi/J: {corrected:.12f}")

print()
print("=== or tune the uniform field to B_c = (2l+1) pi / t_c ===")
res = tune_uniform_field(spec, SearchConfig(t_max=1.3 * T_C), (0.0, 2.0), n_b=32)
print(f"tuned optimum: Fbar = {res.fbar:.9f} at t = {res.best_t:.6f}, B = {res.best_field:.6f}")

tuned = preset("sec2-three-spin-center", J, math.pi / T_C)
rec = time_series(tuned, [T_C])[0]
print(f"closed-form check at B = pi/t_c: f(t_c) = {rec.f:.6f} -> Fbar = "
      f"{average_fidelity(rec.f):.12f}")
