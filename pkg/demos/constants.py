"""Print the exact bound constants next to their decimal values."""
from kplanar import bounds


def main():
    for name, value in sorted(bounds.constants_report().items()):
        if isinstance(value, dict) and "num" in value:
            print(f"{name:32s} {value['num']}/{value['den']} = {value['num'] / value['den']:.6f}")
    for claim in bounds.rounded_claims():
        print(f"{claim.name:32s} {'holds' if claim.holds else 'FAILS'}")


if __name__ == "__main__":
    main()
