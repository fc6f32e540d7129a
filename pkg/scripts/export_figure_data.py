#!/usr/bin/env python3
"""Export the full data bundle for every shipped preset.

Runs each CLI command on each preset into out/<preset>/<command>/ so the
resulting CSV grids and tables can be plotted or diffed by external tooling.
Reruns are byte-identical.
"""

import argparse
import sys

from twotone.cli import main as cli_main
from twotone.presets import PRESETS

COMMANDS = ("stft", "ridges", "zeros", "reassign", "squeeze")


def run(out_root: str, presets, grid_args) -> int:
    for preset in presets:
        for command in COMMANDS:
            argv = [command, "--preset", preset,
                    "--out", f"{out_root}/{preset}/{command}", *grid_args]
            print("twotone", " ".join(argv))
            code = cli_main(argv)
            if code != 0:
                print(f"command failed with exit code {code}", file=sys.stderr)
                return code
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output root directory")
    parser.add_argument("--preset", action="append",
                        help="preset name (repeatable; default: all)")
    parser.add_argument("--coarse", action="store_true",
                        help="small grids for a quick smoke run")
    args = parser.parse_args()
    selected = args.preset or sorted(PRESETS)
    extra = ["--grid.n_t=49", "--grid.n_eta=65"] if args.coarse else []
    sys.exit(run(args.out, selected, extra))
