"""Export the feasibility problem in sparse SDPA format and read it back.

The text file carries the slack-maximization form, so any external
semidefinite solver can reproduce (or audit) a feasibility decision.
"""

from stringstab import (SystemDescription, build_affine_system, build_blocks,
                        export_sdpa, read_sdpa, solve_feasibility)

sysd = SystemDescription(A=[[2.0, 1.0], [0.0, 1.0]], B=[1.0, 1.0],
                         K=[-10.0, 2.0], c=10.0, c0=0.15)

system = build_affine_system(build_blocks(sysd, 1))
text = export_sdpa(system, comment="order-1 stability feasibility")
with open("problem.dat-s", "w") as f:
    f.write(text)

objective, sizes, F = read_sdpa(text)
print(f"wrote problem.dat-s: {objective.size} variables, "
      f"blocks {sizes}, {sum(t.count(chr(10)) for t in [text])} lines")

report = solve_feasibility(system)
print(f"built-in solver decision: {report.status} "
      f"(slack {report.certificate.t_star:.4g})")
