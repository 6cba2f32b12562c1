"""JSON front end.

A request is ``{"command": ..., "payload": {...}}``; the response echoes the
request and carries a ``status`` of ``ok``, ``usage_error`` or
``undecided``.  Exit codes: 0 (verdict produced), 2 (usage), 3 (undecided or
resource limit).  ``--batch`` reads newline-delimited requests and writes
one response line per request.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any, Callable, TextIO

from . import __version__
from .brauer import GenericBrauerClass, TypeATorsorData, torsor_a_is_anisotropic, torsor_a_lifts
from .classify import (
    Other,
    SemisimpleDescriptor,
    TypeAInner,
    TypeAOuter,
    TypeC,
    TypeD5,
    Verdict,
    classify_semisimple,
    classify_simple,
    semisimple_to_typea,
    typea_engine,
)
from .errors import EngineError, SquarefreeHypothesisError, Undecided, UsageError
from .lattice import DEFAULT_ENUMERATION_CAP, CentralSubgroupSpec
from .qform import (
    RationalQuadraticForm,
    determinant_class,
    find_isotropic_vector,
    hasse_invariant,
    is_isotropic,
    is_locally_isotropic,
    place_name,
    relevant_places,
    signed_discriminant,
    spin_descriptor_of,
    torsor_d5_isotropic,
    witt_invariant,
)

EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED = 0, 2, 3
STATUS_EXIT = {"ok": EXIT_OK, "usage_error": EXIT_USAGE, "undecided": EXIT_UNDECIDED}

RULE_NAMES = {
    "simple": "classification of simple strongly isotropic groups",
    "product": "direct product of canonical quotients (product law)",
    "semisimple-quotient": "semisimple groups with squarefree type A degrees: "
                           "strongly isotropic iff some canonical simple quotient is",
    "type-a-lattice": "split type A criterion on the character lattice of C",
}

# -- payload parsing --------------------------------------------------------


def _get(payload: dict, key: str, kind: type, default: Any = ...):
    if key not in payload:
        if default is ...:
            raise UsageError(f"missing field {key!r}")
        return default
    value = payload[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise UsageError(f"field {key!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise UsageError(f"field {key!r} must be {kind.__name__}")
    return value


def _int_list(value: Any, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise UsageError(f"{what} must be a list of integers")
    return tuple(value)


def _form(payload: dict, key: str = "form") -> RationalQuadraticForm:
    value = payload.get(key)
    if isinstance(value, str):
        return RationalQuadraticForm.parse(value)
    if isinstance(value, list):
        return RationalQuadraticForm.parse(",".join(str(x) for x in value))
    raise UsageError(f"field {key!r} must be a form such as \"1,-1,2/3\"")


def parse_simple(payload: dict):
    if not isinstance(payload, dict):
        raise UsageError("descriptor must be an object")
    kind = str(payload.get("type", "")).replace("-", "_").lower()
    if kind in ("a_inner", "a"):
        return TypeAInner(_get(payload, "m", int), _get(payload, "ind_D", int, 1),
                          _get(payload, "d", int, 1))
    if kind == "a_outer":
        return TypeAOuter()
    if kind == "c":
        return TypeC(_get(payload, "n", int, 1), _get(payload, "algebra_split", bool, True),
                     _get(payload, "adjoint", bool, False))
    if kind == "d5":
        if "form" in payload:
            return TypeD5.from_form(_form(payload))
        return TypeD5(_get(payload, "simply_connected", bool, True),
                      _get(payload, "disc_trivial", bool),
                      _get(payload, "clifford_split", bool))
    if kind == "other":
        return Other(_get(payload, "label", str))
    raise UsageError(f"unknown group type {payload.get('type')!r}")


def parse_semisimple(payload: dict) -> SemisimpleDescriptor:
    factors = _get(payload, "factors", list)
    gens = _get(payload, "center_generators", list, [])
    return SemisimpleDescriptor(
        tuple(parse_simple(f) for f in factors),
        tuple(_int_list(z, "center generator") for z in gens),
    )


def parse_subgroup(payload: dict) -> tuple[tuple[int, ...], CentralSubgroupSpec]:
    moduli = _int_list(_get(payload, "moduli", list), "moduli")
    cochars = tuple(_int_list(g, "cocharacter generator")
                    for g in _get(payload, "cocharacter_generators", list, []))
    torsion = []
    for t in _get(payload, "torsion_generators", list, []):
        if isinstance(t, dict):
            torsion.append((_get(t, "modulus", int), _int_list(t.get("exponents"), "exponents")))
        elif isinstance(t, list) and len(t) == 2 and isinstance(t[0], int):
            torsion.append((t[0], _int_list(t[1], "exponents")))
        else:
            raise UsageError("torsion generator must be {modulus, exponents}")
    return moduli, CentralSubgroupSpec(len(moduli), cochars, tuple(torsion))


# -- commands -------------------------------------------------------------


def _verdict_result(v: Verdict) -> dict:
    out = dataclasses.asdict(v)
    out["rule_name"] = RULE_NAMES[v.rule]
    return out


def _cmd_simple(payload, cap):
    return _verdict_result(classify_simple(parse_simple(payload)))


def _cmd_semisimple(payload, cap):
    desc = parse_semisimple(payload)
    try:
        return _verdict_result(classify_semisimple(desc))
    except SquarefreeHypothesisError as exc:
        try:
            moduli, spec = semisimple_to_typea(desc)
        except UsageError:
            raise exc from None
        out = _verdict_result(typea_engine(moduli, spec, cap))
        out["rerouted"] = {"from": "semisimple-quotient", "hypothesis": str(exc),
                           "moduli": list(moduli)}
        return out


def _cmd_typea(payload, cap):
    moduli, spec = parse_subgroup(payload)
    return _verdict_result(typea_engine(moduli, spec, cap))


def _cmd_qform_invariants(payload, cap):
    q = _form(payload)
    spin = spin_descriptor_of(q)
    return {
        "form": [str(a) for a in q.coefficients],
        "dimension": q.dim,
        "determinant": determinant_class(q).value,
        "signed_discriminant": signed_discriminant(q).value,
        "hasse_invariant": hasse_invariant(q).places(),
        "witt_invariant": witt_invariant(q).places(),
        "spin_descriptor": {"dimension": spin.dimension, "disc_trivial": spin.disc_trivial,
                            "clifford_split": spin.clifford_split},
    }


def _cmd_qform_isotropy(payload, cap):
    q = _form(payload)
    places = relevant_places(q)
    out = {
        "form": [str(a) for a in q.coefficients],
        "isotropic": is_isotropic(q),
        "local": {place_name(v): is_locally_isotropic(q, v) for v in places},
    }
    if out["isotropic"] and q.dim <= 5:
        vec = find_isotropic_vector(q, 10)
        if vec is not None:
            out["vector"] = list(vec)
    return out


def _cmd_torsor_a(payload, cap):
    data = TypeATorsorData(_get(payload, "n", int), _get(payload, "ind_D", int, 1),
                           _get(payload, "ind_A", int), _get(payload, "d", int, 1))
    out = {"anisotropic": torsor_a_is_anisotropic(data)}
    if "class_A" in payload or "class_D" in payload:
        moduli = _int_list(_get(payload, "moduli", list), "moduli")
        a = GenericBrauerClass(moduli, _int_list(_get(payload, "class_A", list), "class_A"))
        d = GenericBrauerClass(moduli, _int_list(_get(payload, "class_D", list), "class_D"))
        out["lifts"] = torsor_a_lifts(data, a, d)
    return out


def _cmd_torsor_d5(payload, cap):
    base, twist = _form(payload, "base"), _form(payload, "twist")
    return {"isotropic": torsor_d5_isotropic(base, twist)}


COMMANDS: dict[str, Callable[[Any, int], dict]] = {
    "simple": _cmd_simple,
    "semisimple": _cmd_semisimple,
    "typea": _cmd_typea,
    "qform-invariants": _cmd_qform_invariants,
    "qform-isotropy": _cmd_qform_isotropy,
    "torsor-a": _cmd_torsor_a,
    "torsor-d5": _cmd_torsor_d5,
}


def run(request: Any, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> dict:
    """Answer one request document; never raises for bad input."""
    response: dict[str, Any] = {"engine_version": __version__, "input": request}
    try:
        if not isinstance(request, dict):
            raise UsageError("request must be a JSON object")
        command = request.get("command")
        if command not in COMMANDS:
            raise UsageError(f"unknown command {command!r}; expected one of {sorted(COMMANDS)}")
        payload = request.get("payload", {})
        if not isinstance(payload, dict):
            raise UsageError("payload must be a JSON object")
        response["command"] = command
        result = COMMANDS[command](payload, enumeration_cap)
    except Undecided as exc:
        response.update(status="undecided", error={"type": type(exc).__name__, "message": str(exc)})
        return response
    except (UsageError, EngineError) as exc:
        response.update(status="usage_error", error={"type": type(exc).__name__, "message": str(exc)})
        return response
    if "rule" in result:
        response["witness"] = result.pop("witness")
        response["reason"] = result.pop("reason")
    response.update(status="ok", result=result)
    return response


def exit_code(response: dict) -> int:
    return STATUS_EXIT[response["status"]]


def batch(lines, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield one response per non-blank request line, in order."""
    for line in lines:
        if not line.strip():
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            yield {
                "engine_version": __version__,
                "input": line.rstrip("\n"),
                "status": "usage_error",
                "error": {"type": "JSONDecodeError", "message": str(exc)},
            }
            continue
        yield run(request, enumeration_cap)


def explain(request: Any, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> str:
    """Human-readable derivation of the response to ``request``."""
    resp = run(request, enumeration_cap)
    lines = [f"command: {resp.get('command', '?')}", f"status: {resp['status']}"]
    if resp["status"] != "ok":
        err = resp["error"]
        lines.append(f"not decided: {err['type']}: {err['message']}")
        if err["type"] == "SquarefreeHypothesisError":
            lines.append("hypothesis: every type A_{n-1} factor must have squarefree n")
        return "\n".join(lines)
    result = resp["result"]
    if "rule" in result:
        if "rerouted" in result:
            lines.append(f"squarefree hypothesis failed: {result['rerouted']['hypothesis']}")
            lines.append(f"rerouted to degrees {result['rerouted']['moduli']}")
        lines.append(f"rule: {result['rule_name']}")
        ev = result["evidence"]
        if "lattice_basis" in ev:
            lines.append(f"character lattice basis: {ev['lattice_basis']}")
            lines.append(f"residue group order: {ev['residue_group_order']}")
        if "index_reductions" in ev:
            lines.append(f"index reductions per factor: {ev['index_reductions']}")
        if "projected_centers" in ev:
            lines.append(f"projected centers: {ev['projected_centers']}")
            for q, ok in zip(ev["quotients"], ev["quotient_verdicts"]):
                lines.append(f"  {q}: {'strongly isotropic' if ok else 'not strongly isotropic'}")
        lines.append(f"verdict: {'strongly isotropic' if result['strongly_isotropic'] else 'not strongly isotropic'}")
        lines.append(f"reason: {resp['reason']}")
        if resp["witness"] is not None:
            lines.append(f"witness: {json.dumps(resp['witness'], sort_keys=True)}")
    elif "local" in result:
        for place, ok in result["local"].items():
            lines.append(f"place {place}: {'isotropic' if ok else 'anisotropic'}")
        lines.append(f"isotropic over Q: {result['isotropic']}")
        if "vector" in result:
            lines.append(f"vector: {result['vector']}")
    else:
        for key, value in result.items():
            lines.append(f"{key}: {json.dumps(value)}")
    return "\n".join(lines)


def _read_payload(command: str, text: str | None, stdin: TextIO) -> Any:
    if text is None or text == "-":
        text = stdin.read()
    text = text.strip()
    if command.startswith("qform") and not text.startswith("{"):
        return {"form": text}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"payload is not valid JSON: {exc}") from None


def main(argv: list[str] | None = None, stdin: TextIO = sys.stdin,
         stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    parser = argparse.ArgumentParser(
        prog="strongiso", description="Decide strong isotropy of algebraic groups."
    )
    parser.add_argument("--enumeration-cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                        metavar="N", help="largest residue group to enumerate (default %(default)s)")
    parser.add_argument("--trace", action="store_true", help="print a derivation to stderr")
    parser.add_argument("--batch", metavar="FILE",
                        help="newline-delimited requests ('-' for stdin)")
    parser.add_argument("command", nargs="?", choices=sorted(COMMANDS))
    parser.add_argument("payload", nargs="?", help="JSON payload ('-' or omitted: stdin)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.enumeration_cap < 1:
        print("--enumeration-cap must be positive", file=stderr)
        return EXIT_USAGE

    if args.batch is not None:
        if args.command is not None:
            print("--batch takes no command", file=stderr)
            return EXIT_USAGE
        try:
            source = stdin if args.batch == "-" else open(args.batch, encoding="utf-8")
        except OSError as exc:
            print(f"cannot read {args.batch}: {exc}", file=stderr)
            return EXIT_USAGE
        with source:
            for response in batch(source, args.enumeration_cap):
                if args.trace and isinstance(response["input"], dict):
                    print(explain(response["input"], args.enumeration_cap), file=stderr)
                print(json.dumps(response, sort_keys=True), file=stdout)
        return EXIT_OK

    if args.command is None:
        parser.print_usage(stderr)
        return EXIT_USAGE
    try:
        payload = _read_payload(args.command, args.payload, stdin)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    request = {"command": args.command, "payload": payload}
    response = run(request, args.enumeration_cap)
    if args.trace:
        print(explain(request, args.enumeration_cap), file=stderr)
    print(json.dumps(response, indent=2, sort_keys=True), file=stdout)
    return exit_code(response)


if __name__ == "__main__":
    sys.exit(main())
