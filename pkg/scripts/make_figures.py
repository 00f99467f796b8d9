"""Write every plotdata CSV for one (p, N) into a directory."""

import argparse
import pathlib

from lipinterp import cli


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=pathlib.Path)
    ap.add_argument("--p", default="2")
    ap.add_argument("--N", default="2")
    ap.add_argument("--depth", type=int, default=4, help="polygons E_n, G(lambda_n), g(., lambda_n) for n <= depth")
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    common = ["--p", args.p, "--N", args.N]
    jobs = [("gamma", []), ("sN", [])]
    for n in range(1, args.depth + 1):
        jobs += [(t, ["--n", str(n)]) for t in ("E", "G")] + [("g", ["--t", f"lambda{n}"])]
    for target, extra in jobs:
        tag = "".join(extra[1:]) or "all"
        dest = args.outdir / f"{target}-p{args.p}-N{args.N}-{tag}.csv"
        code = cli.main(["plotdata", target, *common, *extra, "--output", str(dest)])
        if code:
            raise SystemExit(code)
        print(dest)


if __name__ == "__main__":
    main()
