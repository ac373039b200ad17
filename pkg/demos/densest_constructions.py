"""Generate every construction family, check it and print its edge count."""
from kplanar.audit import skeleton_audit
from kplanar.constructions import FAMILIES
from kplanar.planarization import planarize


def main():
    for name, build in sorted(FAMILIES.items()):
        d = build(2)
        p = planarize(d)
        worst = max((len(v) for v in d.to_json()["crossings"].values()), default=0)
        sk = skeleton_audit(d)
        print(f"{name:10s} n={d.n:4d} m={d.m:5d} max crossings={worst} "
              f"faces={len(p.faces)} polyhedral={sk.polyhedral}")


if __name__ == "__main__":
    main()
