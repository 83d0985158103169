"""Command line front end.

Subcommands build a channel, a state or a propagator from flags, run one
experiment and serialize the result for external plotting. CSV files carry a
leading '# config: ...' comment with the full configuration and a header
naming the columns; JSON files carry the same three pieces as keys. No
plotting here on purpose.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .channels import (
    apply_channel,
    channel_spectrum,
    line_points,
    make_depolarizing,
    make_gaussian,
    make_phase_damping_line,
)
from .dynamics import LinearMapSpec, nonlinear_kick, quantize_linear_map
from .phasespace import TorusGeometry
from .spectral import SpectrumResult, build_noisy_propagator, leading_spectrum, sort_by_modulus, stability_report
from .states import cat_state, density_from_pure, wigner_function

__all__ = ["main"]


def _write_table(path: str, fmt: str, config: dict, columns: list, rows) -> None:
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            fh.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)
    else:
        with open(path, "w") as fh:
            json.dump({"config": config, "columns": columns, "rows": [list(r) for r in rows]}, fh)
            fh.write("\n")


def _read_table(path: str) -> tuple[list, list]:
    with open(path) as fh:
        head = fh.read(1)
        fh.seek(0)
        if head == "{":
            doc = json.load(fh)
            return doc["columns"], doc["rows"]
        rows = []
        columns = None
        for line in csv.reader(l for l in fh if not l.startswith("#")):
            if columns is None:
                columns = line
            else:
                rows.append([float(x) for x in line])
        return columns or [], rows


def _build_channel(args, geom: TorusGeometry):
    if args.family == "depolarizing":
        return make_depolarizing(geom, args.epsilon)
    if args.family == "pdc-line":
        if args.line is None:
            raise ValueError("--line is required for --family pdc-line")
        try:
            n1, n2, n3 = (int(x) for x in args.line.split(","))
        except ValueError:
            raise ValueError(f"--line must be three comma-separated integers, got {args.line!r}") from None
        return make_phase_damping_line(geom, line_points(geom, n1, n2, n3), args.epsilon)
    if args.sigma is None:
        raise ValueError("--sigma is required for --family gaussian")
    return make_gaussian(geom, args.sigma)


def _channel_config(args) -> dict:
    return {
        "command": args.command,
        "n": args.n,
        "family": args.family,
        "epsilon": args.epsilon,
        "line": args.line,
        "sigma": args.sigma,
    }


def _parse_centers(raw: str):
    vals = [float(x) for x in raw.split(",")]
    if len(vals) != 4:
        raise ValueError(f"--centers needs 4 comma-separated reals, got {raw!r}")
    return (vals[0], vals[1]), (vals[2], vals[3])


def cmd_channel_spectrum(args) -> None:
    geom = TorusGeometry(args.n)
    ch = _build_channel(args, geom)
    vals = channel_spectrum(ch).values
    rows = [
        (q, p, vals[q, p].real, vals[q, p].imag) for q in range(args.n) for p in range(args.n)
    ]
    _write_table(args.out, args.format, _channel_config(args), ["q", "p", "re", "im"], rows)


def cmd_evolve(args) -> None:
    geom = TorusGeometry(args.n)
    ch = _build_channel(args, geom)
    c1, c2 = _parse_centers(args.centers)
    rho = density_from_pure(cat_state(geom, c1, c2))
    w_in = wigner_function(rho).values
    w_out = wigner_function(apply_channel(ch, rho)).values
    cfg = _channel_config(args) | {"centers": args.centers}
    rows = [
        (jq, jp, w_in[jq, jp], w_out[jq, jp])
        for jq in range(2 * args.n)
        for jp in range(2 * args.n)
    ]
    _write_table(args.out, args.format, cfg, ["jq", "jp", "w_in", "w_out"], rows)


def cmd_wigner(args) -> None:
    geom = TorusGeometry(args.n)
    c1, c2 = _parse_centers(args.centers)
    w = wigner_function(density_from_pure(cat_state(geom, c1, c2))).values
    cfg = {"command": args.command, "n": args.n, "centers": args.centers}
    rows = [(jq, jp, w[jq, jp]) for jq in range(2 * args.n) for jp in range(2 * args.n)]
    _write_table(args.out, args.format, cfg, ["jq", "jp", "w"], rows)


def cmd_propagator_spectrum(args) -> None:
    geom = TorusGeometry(args.n)
    try:
        a, b, c, d = (int(x) for x in args.map.split(","))
    except ValueError:
        raise ValueError(f"--map must be four comma-separated integers, got {args.map!r}") from None
    u = quantize_linear_map(geom, LinearMapSpec(a, b, c, d)) @ nonlinear_kick(geom, args.k)
    tp = build_noisy_propagator(make_gaussian(geom, args.sigma), u, args.a_coeff)
    count = args.count if args.count else tp.dim
    spec = leading_spectrum(tp, count)
    cfg = {
        "command": args.command,
        "n": args.n,
        "sigma": args.sigma,
        "k": args.k,
        "map": args.map,
        "a_coeff": args.a_coeff,
        "dim": tp.dim,
    }
    rows = [
        (z.real, z.imag, abs(z), float(np.angle(z)), float(-np.log(abs(z))) if abs(z) > 0 else float("inf"))
        for z in spec.eigenvalues
    ]
    _write_table(
        args.out, args.format, cfg, ["re", "im", "modulus", "phase", "neg_log_modulus"], rows
    )


def cmd_stability(args) -> None:
    specs = []
    for path in args.inputs:
        columns, rows = _read_table(path)
        try:
            ire, iim = columns.index("re"), columns.index("im")
        except ValueError:
            raise ValueError(f"{path} has no re/im columns") from None
        vals = sort_by_modulus(np.array([r[ire] + 1j * r[iim] for r in rows]))
        specs.append(SpectrumResult(eigenvalues=vals, dim_used=len(vals)))
    dev = stability_report(specs[0], specs[1], args.count)
    print(f"max deviation over top {args.count}: {dev:.6e}")


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["depolarizing", "pdc-line", "gaussian"], required=True)
    p.add_argument("--epsilon", type=float, default=1.0, help="noise strength in [0, 1]")
    p.add_argument("--line", help="n1,n2,n3 for pdc-line")
    p.add_argument("--sigma", type=float, help="Gaussian width (gaussian family)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--config", help="JSON file of flag defaults; explicit flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chordnoise", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("channel-spectrum", help="chord-basis spectrum of a noise channel")
    p.add_argument("--n", type=int, required=True)
    _add_channel_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_channel_spectrum)

    p = sub.add_parser("evolve", help="one noise step on a cat state, Wigner in and out")
    p.add_argument("--n", type=int, required=True)
    _add_channel_flags(p)
    p.add_argument("--centers", default="0.4,0.25,0.6,0.75", help="q1,p1,q2,p2 of the two packets")
    _add_output_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("wigner", help="Wigner grid of a cat state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--centers", default="0.4,0.25,0.6,0.75", help="q1,p1,q2,p2 of the two packets")
    _add_output_flags(p)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("propagator-spectrum", help="leading spectrum of noise composed with a map")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--sigma", type=float, default=0.063)
    p.add_argument("--k", type=float, default=0.02, help="kick strength")
    p.add_argument("--map", default="1,1,1,2", help="a,b,c,d of the linear map")
    p.add_argument("--a-coeff", type=float, default=2.0, dest="a_coeff")
    p.add_argument("--count", type=int, default=0, help="eigenvalues to write (0 = all)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_propagator_spectrum)

    p = sub.add_parser("stability", help="compare two propagator-spectrum files")
    p.add_argument("--inputs", nargs=2, required=True, metavar=("FILE1", "FILE2"))
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_stability)

    return parser


def _expand_config(argv: list) -> list:
    """Splice '--config file.json' into flags right after the subcommand.

    Values from the file come first, so flags typed on the command line
    override them.
    """
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config needs a file path")
    with open(argv[i + 1]) as fh:
        doc = json.load(fh)
    rest = argv[:i] + argv[i + 2 :]
    extra = []
    for key in sorted(doc):
        extra += [f"--{key}", str(doc[key])]
    return rest[:1] + extra + rest[1:]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_config(list(sys.argv[1:] if argv is None else argv)))
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
