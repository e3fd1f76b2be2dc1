"""Print the Fuchsian case of each bundled example graph."""

from rabkit.cli import BUILTINS
from rabkit.fuchsian import classify_case, has_induced_4cycle, polygon_report, star_rigid

for name, make in sorted(BUILTINS.items()):
    g = make()
    rep = classify_case(g)
    pr = polygon_report(g)
    m = pr.m if pr.is_gen_mgon else "-"
    print(f"{name:10s} case={rep.case:5s} m={m} induced_4cycle={has_induced_4cycle(g)} "
          f"star_rigid={star_rigid(g)}")
