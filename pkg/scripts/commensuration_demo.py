"""Twisted-lattice demo: find a conjugator and check g lambda g^-1 lies in Gamma.

    python3 scripts/commensuration_demo.py inversion --radius 3 --samples 10
    python3 scripts/commensuration_demo.py rotation
"""

import argparse
import json

from rabkit.atlases import commensuration_demo
from rabkit.building import Building
from rabkit.graph_product import cycle_graph, running_example


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("twist", choices=["none", "inversion", "rotation"])
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    g = cycle_graph(4, 3) if args.twist == "rotation" else running_example()
    rep = commensuration_demo(Building(g), args.twist, args.radius, args.samples, args.seed)
    print(json.dumps(rep.to_json(), sort_keys=True, indent=1))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
