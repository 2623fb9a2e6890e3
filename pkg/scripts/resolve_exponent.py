"""Decide which power of eps belongs in the swept composite denominator.

Both candidates are scored by their fixed-s error slopes and by how well they
reproduce the late 2-periodic amplitude sqrt(eps^2 n)/3.
"""

import json

from asymlog import analysis


def main():
    dec = analysis.exponent_resolution()
    print(json.dumps(dec.as_dict(), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
