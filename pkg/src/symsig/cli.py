"""Command-line interface ``symsig``.

Exit codes: 0 verdict produced (``undecided`` included), 1 a ``verify`` run
found a certificate that does not replay, 2 input error, 3 resource limit,
4 internal consistency failure.
"""

import argparse
import json
import logging
import os
import sys
import time

from . import __version__
from .differentials import ci_freerank, hypersurface_signature
from .errors import HypothesisFailed, InputError, InternalConsistencyError, ResourceLimitExceeded, SymsigError
from .fields import is_prime
from .groebner import Ideal, buchberger, hilbert_series, krull_dimension
from .invariants import DEFAULT_CAP, quotient_signature, undecided_quotient_report
from .io import load_group, load_ideal, load_ring, sha256_bytes, sha256_file
from .report import canonical_json, make_report, render_text, verify_report

log = logging.getLogger("symsig")

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _file_input(path):
    return {"path": str(path), "sha256": sha256_file(path)}


def _text_input(text):
    return {"text": text, "sha256": sha256_bytes(text.encode())}


def cmd_hypersurface(args):
    ring = load_ring(args.ring, args.char)
    f = ring(args.poly)
    result = hypersurface_signature(f, assume_domain=args.assume_domain, max_q=args.max_q)
    return result.to_dict(), {"ring": _file_input(args.ring), "poly": _text_input(args.poly)}


def cmd_ci_freerank(args):
    _, ideal = load_ideal(args.ideal, args.char)
    result = ci_freerank(ideal, assume_domain=args.assume_domain,
                         assume_reflexive=args.assume_reflexive, max_q=args.max_q)
    return result.to_dict(), {"ideal": _file_input(args.ideal)}


def cmd_quotient(args):
    G = load_group(args.group, cap=args.cap)
    try:
        result = quotient_signature(G, char=args.char or 0, N=args.max_degree)
    except HypothesisFailed as exc:
        result = undecided_quotient_report(G, args.char or 0, exc)
    return result.to_dict(), {"group": _file_input(args.group)}


def _ideal_header(ring, ideal):
    return {"ring": ring.describe(), "generators": [str(g) for g in ideal.gens]}


def cmd_groebner(args):
    ring, ideal = load_ideal(args.ideal, args.char)
    gb = buchberger(ideal, order=args.order)
    out = {"kind": "groebner", **_ideal_header(ring, ideal), "order": args.order,
           "basis": [str(g) for g in gb.elements], "verified": gb.verify(),
           "pairs_reduced": gb.pairs_reduced}
    return out, {"ideal": _file_input(args.ideal)}


def cmd_nf(args):
    ring, ideal = load_ideal(args.ideal, args.char)
    f = ring(args.poly)
    gb = buchberger(ideal) if ideal.gens else None
    if gb is None:
        rem, cof, basis = f, [], []
    else:
        rem, cof = gb.normal_form(f)
        basis = gb.elements
    out = {"kind": "nf", **_ideal_header(ring, ideal), "polynomial": str(f), "remainder": str(rem),
           "member": rem.is_zero(), "basis": [str(g) for g in basis], "cofactors": [str(c) for c in cof]}
    return out, {"ideal": _file_input(args.ideal), "poly": _text_input(args.poly)}


def cmd_dim(args):
    ring, ideal = load_ideal(args.ideal, args.char)
    out = {"kind": "dim", **_ideal_header(ring, ideal), "dimension": krull_dimension(ideal)}
    return out, {"ideal": _file_input(args.ideal)}


def cmd_hilbert(args):
    ring, ideal = load_ideal(args.ideal, args.char)
    if not ideal.is_homogeneous():
        raise InputError("Hilbert series need a homogeneous ideal")
    hs = hilbert_series(ideal)
    num, pole = hs.simplified()
    out = {"kind": "hilbert", **_ideal_header(ring, ideal), "numerator": list(hs.numerator),
           "nvars": hs.nvars, "series": str(hs), "reduced_numerator": list(num), "pole_order": pole,
           "coefficients": hs.coefficients(args.max_degree)}
    return out, {"ideal": _file_input(args.ideal)}


def cmd_verify(args):
    try:
        with open(args.report, encoding="utf-8") as fh:
            report = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.report}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.report}: not a JSON report ({exc})") from None
    if not isinstance(report, dict) or "verdict" not in report:
        raise InputError(f"{args.report}: not a symsig report")
    return verify_report(report, seed=args.seed or 0), {"report": _file_input(args.report)}


COMMANDS = {
    "hypersurface": cmd_hypersurface,
    "ci-freerank": cmd_ci_freerank,
    "quotient": cmd_quotient,
    "groebner": cmd_groebner,
    "nf": cmd_nf,
    "dim": cmd_dim,
    "hilbert": cmd_hilbert,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    common.add_argument("--char", type=int, default=None, metavar="P", help="characteristic (0 or a prime)")
    common.add_argument("--limit-pairs", type=int, default=None, metavar="N",
                        help="Groebner pair-reduction budget (also SYMSIG_LIMIT_PAIRS)")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled verification degrees")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="symsig", description="Differential symmetric signatures.")
    parser.add_argument("--version", action="version", version=f"symsig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hypersurface", parents=[common], help="signature of an isolated hypersurface")
    p.add_argument("--ring", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--max-q", type=int, default=3)
    p.add_argument("--assume-domain", action="store_true")

    p = sub.add_parser("ci-freerank", parents=[common], help="free rank of differentials of P/I")
    p.add_argument("--ideal", required=True)
    p.add_argument("--max-q", type=int, default=3)
    p.add_argument("--assume-domain", action="store_true")
    p.add_argument("--assume-reflexive", action="store_true")

    p = sub.add_parser("quotient", parents=[common], help="signature of an invariant ring")
    p.add_argument("--group", required=True)
    p.add_argument("--max-degree", type=int, default=200)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group closure cap")

    p = sub.add_parser("groebner", parents=[common], help="reduced Groebner basis")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    p = sub.add_parser("nf", parents=[common], help="normal form with cofactors")
    p.add_argument("--ideal", required=True)
    p.add_argument("--poly", required=True)

    p = sub.add_parser("dim", parents=[common], help="Krull dimension of P/I")
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series of P/I")
    p.add_argument("--ideal", required=True)
    p.add_argument("--max-degree", type=int, default=10)

    p = sub.add_parser("verify", parents=[common], help="replay the certificates of a report")
    p.add_argument("report")
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI; returns ``(exit_code, report or None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="symsig: %(message)s", stream=stderr)
    if args.limit_pairs is not None:
        os.environ["SYMSIG_LIMIT_PAIRS"] = str(args.limit_pairs)
    command = ["symsig"] + list(argv if argv is not None else sys.argv[1:])
    start = time.perf_counter()
    try:
        if args.char is not None and (args.char < 0 or (args.char and not is_prime(args.char))):
            raise InputError(f"characteristic {args.char} is not 0 or a prime")
        result, inputs = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"symsig: input error: {exc}", file=stderr)
        return EXIT_INPUT, None
    except ResourceLimitExceeded as exc:
        print(f"symsig: resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE, None
    except InternalConsistencyError as exc:
        print(f"symsig: internal consistency failure: {exc}", file=stderr)
        return EXIT_INTERNAL, None
    except SymsigError as exc:
        print(f"symsig: {exc}", file=stderr)
        return EXIT_INPUT, None
    report = make_report(command, inputs, result, time.perf_counter() - start, seed=args.seed)
    log.info("done in %.3f s", report["wall_time_s"])
    if args.json == "-":
        stdout.write(canonical_json(report))
    else:
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(canonical_json(report))
        stdout.write(render_text(report))
    code = EXIT_OK
    if args.command == "verify" and not result["ok"]:
        code = EXIT_VERIFY_FAILED
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
