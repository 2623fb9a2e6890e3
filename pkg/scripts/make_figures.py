"""Write the data tables for figures 1 to 9 as CSV files.

No plotting library is needed; any plotter can read the tables.
"""

import argparse
import pathlib

from asymlog import analysis


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--outdir", default="figures")
    args = p.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for which in range(1, 10):
        table = analysis.figure_data(which)
        path = out / f"figure{which}.csv"
        path.write_text(table.to_csv(), newline="\n")
        print(f"{path}: {len(table.rows)} rows, columns {', '.join(table.header)}")


if __name__ == "__main__":
    main()
