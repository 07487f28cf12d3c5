"""Command-line front end.

Commands: roots, element, bcoeff, ecoeff, kclass, lclass, product, constant,
verify, conjecture.  Every command supports --json for machine-readable
output with stable key ordering (elements sorted by (length, string)), so
fixed inputs produce byte-identical output.  Exit codes: 0 success (and all
identities matched for verify/conjecture), 1 any mismatch, 2 usage error.
Errors are emitted as a structured JSON object on stderr.

Computation is sequential and purely functional over immutable values, so
results do not depend on a thread count; --threads and the environment
variable KSCHUBERT_THREADS are accepted and validated for interface
stability but do not change the (already deterministic) output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from kschubert.constants import (
    ConjectureReport,
    classical_quantum_data,
    conjecture_check,
    element_sort_key,
    load_quantum_data,
    pontryagin_constants,
    verify_embedded_tables,
)
from kschubert.nilhecke import coefficient_table, k_class, l_class
from kschubert.ring import (
    format_gae,
    format_rf,
    gae_to_json,
    rf_to_json,
)
from kschubert.rootsys import (
    InvalidCartanMatrixError,
    UnsupportedTypeError,
    build_root_system,
)
from kschubert.weyl import (
    ParseError,
    ValidationError,
    coset_min,
    finite_element,
    format_element,
    is_grassmannian,
    length,
    parse_element,
    reduced_word,
    translation,
    weyl_group,
)

SCHEMA_VERSION = 1

_DEFAULT_GUARD = {"A1": 8, "A2": 6}


class UsageError(ValueError):
    pass


def _datum(args):
    if args.cartan:
        try:
            matrix = json.loads(args.cartan)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--cartan is not valid JSON: {exc}")
        return build_root_system(matrix)
    return build_root_system(args.type)


def _guard(args, datum) -> int:
    if args.max_length is not None:
        return args.max_length
    return _DEFAULT_GUARD.get(datum.label, 6)


def _parse_guarded(text, datum, guard):
    x = parse_element(text, datum)
    if length(x) > guard:
        raise UsageError(
            f"element {format_element(x)!r} has length {length(x)} > guard "
            f"{guard}; raise --max-length to proceed"
        )
    return x


def _emit(payload: dict, args, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def _row_json(row, value_encoder):
    return {
        format_element(x): value_encoder(c)
        for x, c in sorted(row.items(), key=lambda t: element_sort_key(t[0]))
    }


def _cmd_roots(args) -> int:
    datum = _datum(args)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "roots",
        "label": datum.label,
        "rank": datum.rank,
        "cartan_matrix": [list(r) for r in datum.cartan],
        "simple_roots": [list(r) for r in datum.simple_roots],
        "positive_roots": [list(r) for r in datum.positive_roots],
        "positive_coroots": [list(r) for r in datum.positive_coroots],
        "highest_root": list(datum.highest_root),
        "highest_coroot": list(datum.highest_coroot),
    }
    lines = [
        f"type {datum.label}, rank {datum.rank}",
        f"positive roots ({len(datum.positive_roots)}): "
        + ", ".join(str(r) for r in datum.positive_roots),
        f"highest root {datum.highest_root}, highest coroot {datum.highest_coroot}",
    ]
    _emit(payload, args, "\n".join(lines))
    return 0


def _cmd_element(args) -> int:
    datum = _datum(args)
    x = parse_element(args.element, datum)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "element",
        "element": format_element(x),
        "length": length(x),
        "reduced_word": list(reduced_word(x)),
        "is_grassmannian": is_grassmannian(x),
        "coset_min": format_element(coset_min(x)),
        "translation": list(x.trans),
    }
    human = (
        f"{format_element(x)}: length {length(x)}, reduced word "
        f"{list(reduced_word(x))}, grassmannian={is_grassmannian(x)}, "
        f"coset min {format_element(coset_min(x))}"
    )
    _emit(payload, args, human)
    return 0


def _cmd_bcoeff(args) -> int:
    datum = _datum(args)
    x = _parse_guarded(args.x, datum, _guard(args, datum))
    table = coefficient_table(x)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "bcoeff",
        "element": format_element(x),
        "b_row": _row_json(table.b_row, rf_to_json),
        "coset_b": {
            "t[" + ",".join(map(str, key)) + "]": rf_to_json(v)
            for key, v in sorted(table.coset_b.items())
        },
    }
    lines = [f"b-coefficients of {format_element(x)}:"]
    for v, c in sorted(table.b_row.items(), key=lambda t: element_sort_key(t[0])):
        lines.append(f"  {format_element(v)}: {format_rf(c, args.root_exponents)}")
    _emit(payload, args, "\n".join(lines))
    return 0


def _cmd_ecoeff(args) -> int:
    datum = _datum(args)
    x = _parse_guarded(args.x, datum, _guard(args, datum))
    table = coefficient_table(x)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "ecoeff",
        "element": format_element(x),
        "e_row": _row_json(table.e_row, gae_to_json),
        "coset_e": _row_json(table.coset_e, gae_to_json),
    }
    lines = [f"e-coefficients of {format_element(x)}:"]
    for v, c in sorted(table.e_row.items(), key=lambda t: element_sort_key(t[0])):
        lines.append(f"  {format_element(v)}: {format_gae(c, datum, args.root_exponents)}")
    _emit(payload, args, "\n".join(lines))
    return 0


def _cmd_class(args, kind: str) -> int:
    datum = _datum(args)
    w = _parse_guarded(args.w, datum, _guard(args, datum))
    if not is_grassmannian(w):
        raise UsageError(f"{format_element(w)} is not an affine Grassmannian element")
    cls = (k_class if kind == "kclass" else l_class)(w)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": kind,
        "element": format_element(w),
        "basis": "t",
        "coefficients": _row_json(cls.terms, rf_to_json),
    }
    symbol = "k" if kind == "kclass" else "l"
    lines = [f"{symbol}_{{{format_element(w)}}} in the T-basis:"]
    for v, c in sorted(cls.terms.items(), key=lambda t: element_sort_key(t[0])):
        lines.append(f"  T_{{{format_element(v)}}}: {format_rf(c, args.root_exponents)}")
    _emit(payload, args, "\n".join(lines))
    return 0


def _product_payload(args, command: str):
    datum = _datum(args)
    guard = _guard(args, datum)
    x = _parse_guarded(args.x, datum, guard)
    y = _parse_guarded(args.y, datum, guard)
    if not (is_grassmannian(x) and is_grassmannian(y)):
        raise UsageError("both --x and --y must be affine Grassmannian elements")
    table = pontryagin_constants(x, y)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "x": format_element(x),
        "y": format_element(y),
        "entries": {
            format_element(z): gae_to_json(c) for z, c in table.sorted_entries()
        },
        "warnings": list(table.warnings),
    }
    return datum, table, payload


def _cmd_constant(args) -> int:
    _, _, payload = _product_payload(args, "constant")
    _emit(payload, args, json.dumps(payload, indent=2))
    return 0


def _cmd_product(args) -> int:
    datum, table, payload = _product_payload(args, "product")
    lines = [f"O_{{{payload['x']}}} . O_{{{payload['y']}}} ="]
    for z, c in table.sorted_entries():
        coeff = format_gae(c, datum, args.root_exponents)
        lines.append(f"  ({coeff}) O_{{{format_element(z)}}}")
    for w in table.warnings:
        lines.append(f"  warning: {w}")
    _emit(payload, args, "\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    report = verify_embedded_tables(args.suite)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "suite": args.suite,
        "total": len(report.records),
        "failed": len(report.failures),
        "records": [
            {"identity": r.identity, "ok": r.ok, "detail": r.detail}
            for r in report.records
        ],
    }
    lines = [
        f"{'PASS' if r.ok else 'FAIL'} {r.identity}" + (f"  [{r.detail}]" if r.detail else "")
        for r in report.records
    ]
    lines.append(
        f"{len(report.records) - len(report.failures)}/{len(report.records)} identities verified"
    )
    _emit(payload, args, "\n".join(lines))
    return 0 if report.ok else 1


def _conjecture_inputs(datum, bound: int):
    """Grassmannian representatives of every coset whose translation has
    coordinates in [-bound, bound], enumerated deterministically."""
    coords = [()]
    for _ in range(datum.rank):
        coords = [c + (k,) for c in coords for k in range(-bound, bound + 1)]
    out = {coset_min(translation(datum, c)) for c in coords}
    return sorted(out, key=element_sort_key)


def _cmd_conjecture(args) -> int:
    datum = _datum(args)
    guard = _guard(args, datum)
    data = list(load_quantum_data()) if datum.label == "A1" else []
    data = [d for d in data if d.u.datum == datum]
    reps = _conjecture_inputs(datum, args.max_translation)
    reps = [x for x in reps if length(x) <= guard]
    group = weyl_group(datum)
    finite_pairs = {
        (finite_element(datum, x.wmat), finite_element(datum, y.wmat))
        for x in reps
        for y in reps
    }
    data.extend(classical_quantum_data(datum, sorted(finite_pairs, key=lambda p: (element_sort_key(p[0]), element_sort_key(p[1])))))
    records = []
    mismatches = matches = nodata = 0
    for x in reps:
        for y in reps:
            if element_sort_key(y) < element_sort_key(x):
                continue
            report: ConjectureReport = conjecture_check(x, y, data)
            for e in report.entries:
                records.append(
                    {
                        "x": format_element(x),
                        "y": format_element(y),
                        "z": format_element(e.z),
                        "c": gae_to_json(e.c_value),
                        "w": format_element(e.w),
                        "eta": list(e.eta),
                        "N": gae_to_json(e.n_value) if e.n_value is not None else None,
                        "verdict": e.verdict,
                    }
                )
            mismatches += report.mismatches
            matches += report.matches
            nodata += sum(1 for e in report.entries if e.verdict == "no-data")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "conjecture",
        "type": datum.label,
        "max_translation": args.max_translation,
        "matches": matches,
        "mismatches": mismatches,
        "no_data": nodata,
        "records": records,
    }
    human = [
        f"{r['x']} * {r['y']} -> {r['z']} (w={r['w']}, eta={r['eta']}): {r['verdict']}"
        for r in records
    ]
    human.append(f"matches={matches} mismatches={mismatches} no-data={nodata}")
    _emit(payload, args, "\n".join(human))
    return 0 if mismatches == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kschubert",
        description="Exact Schubert structure constants for the Pontryagin "
        "product on the K-homology of affine Grassmannians.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="accepted for interface stability; evaluation is sequential and "
        "deterministic (env: KSCHUBERT_THREADS)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_type=True):
        if with_type:
            p.add_argument("--type", default="A1", help="type label A1/A2/A3")
            p.add_argument(
                "--cartan",
                default=None,
                help="explicit Cartan matrix as a JSON array of arrays",
            )
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--max-length",
            type=int,
            default=None,
            help="guard on input element length (default 8 for A1, 6 otherwise)",
        )
        p.add_argument(
            "--root-exponents",
            action="store_true",
            help="print monomial exponents in simple-root coordinates",
        )

    p = sub.add_parser("roots", help="root-system data")
    common(p)

    p = sub.add_parser("element", help="parse and canonicalize an element")
    common(p)
    p.add_argument("element", help="element string, e.g. 's1*s2 t[-1,-1]'")

    p = sub.add_parser("bcoeff", help="b-coefficient row of an element")
    common(p)
    p.add_argument("--x", required=True)

    p = sub.add_parser("ecoeff", help="e-coefficient row of an element")
    common(p)
    p.add_argument("--x", required=True)

    p = sub.add_parser("kclass", help="projected ideal-sheaf class in the T-basis")
    common(p)
    p.add_argument("--w", required=True)

    p = sub.add_parser("lclass", help="projected structure-sheaf class in the T-basis")
    common(p)
    p.add_argument("--w", required=True)

    p = sub.add_parser("product", help="Pontryagin product, human-readable")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("constant", help="structure-constant table as JSON")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("verify", help="recompute the embedded reference tables")
    common(p, with_type=False)
    p.add_argument("--suite", choices=["sl2", "sl3", "all"], default="all")

    p = sub.add_parser("conjecture", help="compare affine constants with quantum data")
    common(p)
    p.add_argument("--max-translation", type=int, default=2)
    return parser


_DISPATCH = {
    "roots": _cmd_roots,
    "element": _cmd_element,
    "bcoeff": _cmd_bcoeff,
    "ecoeff": _cmd_ecoeff,
    "kclass": lambda a: _cmd_class(a, "kclass"),
    "lclass": lambda a: _cmd_class(a, "lclass"),
    "product": _cmd_product,
    "constant": _cmd_constant,
    "verify": _cmd_verify,
    "conjecture": _cmd_conjecture,
}


def _resolve_threads(args) -> int:
    raw = args.threads if args.threads is not None else os.environ.get("KSCHUBERT_THREADS", "1")
    try:
        threads = int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"thread count {raw!r} is not an integer")
    if threads < 1:
        raise UsageError(f"thread count must be >= 1, got {threads}")
    return threads


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _resolve_threads(args)
        return _DISPATCH[args.command](args)
    except (
        UsageError,
        ParseError,
        ValidationError,
        UnsupportedTypeError,
        InvalidCartanMatrixError,
        ValueError,
    ) as exc:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "error": {"type": type(exc).__name__, "message": str(exc)},
                }
            ),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
