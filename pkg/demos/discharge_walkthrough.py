"""Run the main rule set on a random convex drawing and show where charge went."""
import random
from collections import Counter

from kplanar.corpus import random_convex
from kplanar.discharge import five_planar_main, run_discharge


def main(seed=11, n=12):
    d = random_convex(n, 5, random.Random(seed))
    led = run_discharge(d, five_planar_main())
    print(f"n={d.n} m={d.m} blocks={len(led.decomposition.blocks)} residue={led.residue}")
    kinds = Counter(reason for _, _, _, reason in led.flows)
    for reason, count in sorted(kinds.items()):
        print(f"  {count:4d} transfers  {reason}")
    print("violations:", led.violations or "none")


if __name__ == "__main__":
    main()
