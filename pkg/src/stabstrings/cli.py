"""Command-line front end: analysis, anyon profiles, and thermal simulation.

Every verb prints a deterministic, line-oriented report (CSV where a table is
natural) so outputs can be golden-file tested and piped to external tools.
"""

from __future__ import annotations

import argparse
import sys

from . import anyons as anyons_mod
from . import thermal as thermal_mod
from .code import (
    CodeFormatError,
    FrustratedCodeError,
    NotSpecifiedError,
    StabilizerCode,
    ValidationError,
    builtin,
    parse,
)
from .identity import elementary_sets, render_family
from .strings import assemble_logicals, classify_translational_3x3

USAGE_ERROR = 2
FAILURE = 1


class _CliError(Exception):
    def __init__(self, message: str, code: int = FAILURE):
        super().__init__(message)
        self.code = code


def _builtin_sizes(n_text: str) -> list[int]:
    """'4' gives [4]; the range form '4..8' gives [4, 5, 6, 7, 8]."""
    if ".." in n_text:
        lo_text, hi_text = n_text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError("empty range")
        return list(range(lo, hi + 1))
    return [int(n_text)]


def _load_codes(args) -> list[tuple[str, StabilizerCode]]:
    if args.builtin:
        spec = args.builtin.split(":")
        if len(spec) != 2:
            raise _CliError(
                f"--builtin takes family:N or family:A..B, got {args.builtin!r}", USAGE_ERROR
            )
        family, n_text = spec
        try:
            sizes = _builtin_sizes(n_text)
        except ValueError:
            raise _CliError(f"--builtin size must be N or A..B, got {n_text!r}", USAGE_ERROR)
        pattern = getattr(args, "pattern", None)
        out = []
        for n in sizes:
            try:
                out.append((f"{family}:{n}", builtin(family, n, pattern=pattern)))
            except (ValueError, ValidationError) as err:
                raise _CliError(f"builtin {family}:{n}: {err}")
        return out
    if not args.input:
        raise _CliError("provide an input file or --builtin family:N", USAGE_ERROR)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise _CliError(str(err))
    return [(args.input, parse(text))]


def _load_code(args) -> StabilizerCode:
    codes = _load_codes(args)
    if len(codes) != 1:
        raise _CliError("this verb takes a single code, not a size range", USAGE_ERROR)
    return codes[0][1]


def _header(code: StabilizerCode) -> list[str]:
    try:
        m = code.degeneracy_exponent()
        m_text = str(m)
    except FrustratedCodeError:
        m_text = "frustrated"
    shape = (
        f"{code.n_rows}" if code.n_rows == code.n_cols else f"{code.n_rows}x{code.n_cols}"
    )
    return [
        f"lattice N={shape} qubits={code.n_qubits}",
        f"generators R={code.n_generators} k={code.k} delta={code.delta!r}",
        f"degeneracy M={m_text} specified={str(code.is_specified()).lower()}",
    ]


def _multi_code(handler):
    """Run a per-code report over every code named by the arguments."""

    def runner(args, out) -> int:
        codes = _load_codes(args)
        worst = 0
        for i, (label, code) in enumerate(codes):
            if len(codes) > 1:
                if i:
                    print("", file=out)
                print(f"=== {label} ===", file=out)
            worst = max(worst, handler(args, code, out))
        return worst

    return runner


def _cmd_validate(args, out) -> int:
    try:
        codes = _load_codes(args)
    except ValidationError as err:
        print("invalid code:", err.report.summary(), file=out)
        return FAILURE
    for _, code in codes:
        report = code.validate()
        for line in _header(code):
            print(line, file=out)
        print(f"strip_safe={str(report.strip_safe).lower()}", file=out)
        print("ok", file=out)
    return 0


@_multi_code
def _cmd_degeneracy(args, code, out) -> int:
    for line in _header(code):
        print(line, file=out)
    kernel = code.identity_kernel()
    print(f"identity_set_basis |G'|={len(kernel)}", file=out)
    m = code.degeneracy_exponent()
    print(f"ground_states 2^M={2**m}", file=out)
    return 0


@_multi_code
def _cmd_identity_sets(args, code, out) -> int:
    for line in _header(code):
        print(line, file=out)
    try:
        fam = elementary_sets(code)
    except NotSpecifiedError as err:
        print(f"error: {err}", file=out)
        return FAILURE
    print(render_family(code, fam), file=out)
    return 0


@_multi_code
def _cmd_strings(args, code, out) -> int:
    for line in _header(code):
        print(line, file=out)
    try:
        result = assemble_logicals(code)
    except NotSpecifiedError as err:
        print(f"error: {err}", file=out)
        return FAILURE
    m = code.degeneracy_exponent()
    for i, rep in enumerate(result.reports):
        verdict = "nontrivial" if rep.independence.nontrivial else "trivial"
        witness = (
            "-" if rep.independence.witness is None else "0x" + rep.independence.witness.to_hex()
        )
        source = "strip-search" if rep.source_index is None else str(rep.source_index)
        print(
            f"operator {i}: {rep.operator.to_text()} orientation={rep.orientation} "
            f"set={source} offset={rep.offset} commutes=all "
            f"independence={verdict} witness={witness}",
            file=out,
        )
    for p in result.partners:
        origin = "emitted" if not p.solved else "solved"
        print(
            f"partner of {p.partner_of}: {p.operator.to_text()} "
            f"class={p.classification} ({origin})",
            file=out,
        )
    for note in result.notes:
        print(f"note: {note}", file=out)
    cert = result.certificate
    print(
        f"certificate: rank {cert.base_rank} -> {cert.achieved_rank} of {cert.n_qubits};"
        f" all M={m} degeneracies broken: {'yes' if cert.passed else 'no'}",
        file=out,
    )
    if not cert.passed:
        print(f"certificate FAILED: {cert.residual} degeneracies survive", file=out)
        return FAILURE
    return 0


def _cmd_classify3x3(args, out) -> int:
    try:
        verdict = classify_translational_3x3(args.pattern, args.n)
    except (ValueError, ValidationError) as err:
        print(f"error: {err}", file=out)
        return FAILURE
    print(f"pattern {verdict.pattern} on n={verdict.n}", file=out)
    print(f"row_products=({','.join(verdict.row_products)})", file=out)
    print(f"col_products=({','.join(verdict.col_products)})", file=out)
    print(f"case={verdict.case}", file=out)
    if verdict.degeneracy_exponent is not None:
        print(f"degeneracy M={verdict.degeneracy_exponent}", file=out)
    for note in verdict.notes:
        print(f"note: {note}", file=out)
    for i, op in enumerate(verdict.operators):
        print(f"operator {i}: {op.to_text()}", file=out)
    return 0


@_multi_code
def _cmd_anyons(args, code, out) -> int:
    if args.format == "text":
        for line in _header(code):
            print(line, file=out)
    result = assemble_logicals(code)
    loops = [r for r in result.reports if r.orientation in ("horizontal", "vertical")]
    if not loops:
        print("no loop operators (all breakers are point-like)", file=out)
        return 0
    for i, rep in enumerate(loops):
        profiles = anyons_mod.energy_profile(code, rep)
        if args.format == "text":
            print(f"loop {i}: {rep.operator.to_text()} orientation={rep.orientation}", file=out)
        print(anyons_mod.profile_csv(profiles), end="", file=out)
    return 0


def _cmd_simulate(args, out) -> int:
    code = _load_code(args)
    family = code.family
    if family is None:
        raise _CliError("simulation needs a built-in family (use --builtin)")
    cfg = thermal_mod.ThermalConfig(
        beta=args.beta,
        t_max=args.tmax,
        seed=args.seed,
        checkpoint_every=args.checkpoint_every,
        trials=args.trials,
    )
    results = thermal_mod.failure_time(code, family, cfg)
    n = code.n_cols if family == "toric" else code.n_rows
    for line in _header(code):
        print(f"# {line}", file=out)
    print(
        f"# seed={cfg.seed} beta={cfg.beta} tmax={cfg.t_max} trials={cfg.trials} "
        f"checkpoint_every={cfg.checkpoint_every}",
        file=out,
    )
    print(
        f"# median={thermal_mod.median_failure_time(results, cfg.t_max)} "
        f"censoring_rate={thermal_mod.censoring_rate(results):.3f}",
        file=out,
    )
    print(thermal_mod.results_csv(family, n, cfg.beta, results), end="", file=out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabstrings",
        description=(
            "analyze 2D stabilizer Hamiltonians on a torus: degeneracy, "
            "string operators, anyon energetics, thermal survival"
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", help="code file (see README for the format)")
        p.add_argument("--builtin", help="family:N (toric, ising1d, ising2d, trans3x3)")
        p.add_argument("--pattern", help="3x3 pattern for trans3x3, rows joined by /")
        p.add_argument("--output", help="write the report here instead of stdout")

    for verb, fn in (
        ("validate", _cmd_validate),
        ("degeneracy", _cmd_degeneracy),
        ("identity-sets", _cmd_identity_sets),
        ("strings", _cmd_strings),
    ):
        p = sub.add_parser(verb)
        add_input(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("classify3x3")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--output")
    p.set_defaults(fn=_cmd_classify3x3)

    p = sub.add_parser("anyons")
    add_input(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(fn=_cmd_anyons)

    p = sub.add_parser("simulate")
    add_input(p)
    p.add_argument("--beta", type=float, default=2.0, help="inverse temperature, 1/delta units")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--tmax", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checkpoint-every", type=int, default=100)
    p.set_defaults(fn=_cmd_simulate)

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    close = False
    if getattr(args, "output", None):
        out = open(args.output, "w", encoding="utf-8")
        close = True
    try:
        return args.fn(args, out)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except (CodeFormatError, ValidationError, FrustratedCodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return FAILURE
    finally:
        if close:
            out.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
