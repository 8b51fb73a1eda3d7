"""
Command line interface.

    qcanon --config sl3.json canon
    qcanon --config sl3.json --format pretty gram --vector "F_i F_j^(2) F_i"
    qcanon --config sl2.json bar --vector "eta x F_i eta"
    qcanon --config sl2.json act --gen E_i --nu i=1

Config files are JSON objects with keys vertices, edges (or matrix),
highest_weights (a list of {vertex: multiplicity} maps), depth and an
optional bounds object {"degree": D, "height": H} for the oracle.

Exit status: 0 success, 1 certification or verification failure, 2 input
error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from .canon import CanonError, canonical_basis, certify_basis, expand_in_basis
from .cartan import CartanData, CartanError, Weight, from_graph, from_matrix
from .involution import SpanningFailure, bar_vector
from .tensor import TensorModule
from .verify import vector_str, vector_to_json, verify_bar, verify_forms, verify_kef_shadow, verify_relations
from .verma import DepthError, Gen, ModuleVector

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    cartan: CartanData
    highest_weights: tuple[Weight, ...]
    depth: int
    bounds: dict

    def module(self) -> TensorModule:
        tm = TensorModule(self.cartan, self.highest_weights, self.depth)
        if self.bounds:
            tm.cache["oracle_bounds"] = dict(self.bounds)
        return tm


def load_config(data: dict, depth: int | None = None) -> Config:
    try:
        vertices = data["vertices"]
        if "matrix" in data:
            cd = from_matrix(vertices, data["matrix"])
        else:
            cd = from_graph(vertices, data.get("edges", []))
        weights = tuple(cd.weight(w) for w in data.get("highest_weights", []))
        d = depth if depth is not None else data.get("depth", 4)
        if not isinstance(d, int) or d < 0:
            raise InputError(f"depth must be a nonnegative integer, got {d!r}")
        bounds = {}
        raw = data.get("bounds", {}) or {}
        if "degree" in raw:
            bounds["degree_bound"] = int(raw["degree"])
        if "height" in raw:
            bounds["height_bound"] = int(raw["height"])
    except KeyError as exc:
        raise InputError(f"missing config key {exc}") from exc
    except (CartanError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return Config(cd, weights, d, bounds)


# -- small parsers --------------------------------------------------------------

_GEN = re.compile(r"^([EFK])_([A-Za-z0-9]+)(?:\^\(?(-?\d+)\)?)?$")


def parse_gen(cd: CartanData, tok: str) -> Gen:
    m = _GEN.match(tok.strip())
    if not m:
        raise InputError(f"cannot parse generator {tok!r}; use e.g. F_i, E_j^(2), K_i^-1")
    kind, v, n = m.group(1), m.group(2), m.group(3)
    try:
        i = cd.index(v)
    except (CartanError, KeyError, ValueError) as exc:
        raise InputError(f"unknown vertex {v!r}") from exc
    try:
        return Gen(kind, i, int(n) if n is not None else 1)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _word(cd: CartanData, text: str) -> list[Gen]:
    toks = [t for t in text.split() if t not in ("eta", "η", "1")]
    return [parse_gen(cd, t) for t in toks]


def parse_vector(tm: TensorModule, text: str) -> ModuleVector:
    """'F_i F_j eta' acts on the vacuum; 'eta x F_i eta' is a pure tensor."""
    pieces = re.split(r"\s+x\s+|⊗", text.strip())
    if len(pieces) == 1:
        return tm.act_word(_word(tm.cd, pieces[0]), tm.vacuum())
    if len(pieces) != tm.length:
        raise InputError(f"pure tensor needs {tm.length} factors, got {len(pieces)}")
    parts = []
    for comp, piece in zip(tm.components, pieces):
        single = TensorModule(tm.cd, [comp.omega], tm.depth, tm.registry)
        v = single.act_word(_word(tm.cd, piece), single.vacuum())
        parts.append(ModuleVector(v.nu, {k[0][1]: c for k, c in v.items()}))
    return tm.pure(parts)


def parse_content(cd: CartanData, text: str) -> Weight:
    text = text.strip()
    if not text or text == "0":
        return cd.zero()
    try:
        if text.startswith("{"):
            return cd.weight(json.loads(text))
        pairs = dict(p.split("=") for p in text.split(","))
        return cd.weight({k.strip(): int(v) for k, v in pairs.items()})
    except (ValueError, CartanError, KeyError) as exc:
        raise InputError(f"cannot parse content {text!r}; use e.g. i=1,j=2") from exc


# -- commands --------------------------------------------------------------------


def _space_json(tm, B, cert) -> dict:
    return {
        "nu": tm.cd.weight_dict(B.nu),
        "dim": B.dim,
        "method": B.method,
        "basis": [
            {
                "pretty": vector_str(tm, b),
                "standard_expansion": [c.to_json() for c in exp],
                "word_expansion": vector_to_json(tm, b),
            }
            for b, exp in zip(B.elements, B.standard_expansion)
        ],
        "certificate": cert.to_json(),
    }


def cmd_canon(cfg: Config, args) -> tuple[int, dict, str]:
    tm = cfg.module()
    spaces = []
    lines = []
    ok = True
    total = 0
    for nu in tm.contents():
        if not tm.dim(nu):
            continue
        try:
            B = canonical_basis(tm, nu, args.oracle)
        except CanonError as exc:
            ok = False
            spaces.append({"nu": tm.cd.weight_dict(nu), "error": str(exc)})
            lines.append(f"content {tm.cd.weight_dict(nu)}: FAILED {exc}")
            continue
        cert = certify_basis(tm, B)
        ok &= cert.ok
        total += B.dim
        spaces.append(_space_json(tm, B, cert))
        status = "certified" if cert.ok else f"NOT certified {cert.witnesses}"
        lines.append(f"content {tm.cd.weight_dict(nu)}  dim {B.dim}  {status}")
        for b in B.elements:
            lines.append(f"  {vector_str(tm, b)}")
    summary = {"elements": total, "contents": len(spaces), "certified": ok}
    lines.append(f"{total} canonical elements over {len(spaces)} contents")
    return (EXIT_OK if ok else EXIT_FAIL), {"spaces": spaces, "summary": summary}, "\n".join(lines)


def cmd_verify(cfg: Config, args) -> tuple[int, dict, str]:
    tm = cfg.module()
    reports = [f(tm, cfg.depth) for f in (verify_relations, verify_kef_shadow, verify_forms, verify_bar)]
    checks = [c for r in reports for c in r.checks]
    npass = sum(c.passed for c in checks)
    data = {
        "module": repr(tm),
        "depth": cfg.depth,
        "checks": [c.to_json() for c in checks],
        "summary": {"pass": npass, "fail": len(checks) - npass},
    }
    lines = [f"{c.id:12s} {'pass' if c.passed else 'FAIL'}  ({c.cases} cases)" for c in checks]
    lines.append(f"{npass} passed, {len(checks) - npass} failed")
    return (EXIT_OK if npass == len(checks) else EXIT_FAIL), data, "\n".join(lines)


def _vectors_or_basis(tm, args) -> tuple[list[ModuleVector], list[str]]:
    if args.vector:
        vs = [parse_vector(tm, t) for t in args.vector]
        return vs, list(args.vector)
    if args.nu is None:
        raise InputError("give --vector or --nu")
    nu = parse_content(tm.cd, args.nu)
    B = canonical_basis(tm, nu, args.oracle)
    return list(B.elements), [vector_str(tm, b) for b in B.elements]


def cmd_gram(cfg: Config, args) -> tuple[int, dict, str]:
    tm = cfg.module()
    vs, names = _vectors_or_basis(tm, args)
    G = [[tm.form(u, w) for w in vs] for u in vs]
    data = {"vectors": names, "gram": [[x.to_json() for x in row] for row in G]}
    lines = [f"[{k}] {n}" for k, n in enumerate(names)]
    lines += ["  ".join(x.pretty() for x in row) for row in G]
    return EXIT_OK, data, "\n".join(lines)


def cmd_bar(cfg: Config, args) -> tuple[int, dict, str]:
    tm = cfg.module()
    vs, names = _vectors_or_basis(tm, args)
    out = []
    lines = []
    for v, n in zip(vs, names):
        w = bar_vector(tm, v)
        out.append({"vector": vector_to_json(tm, v), "bar": vector_to_json(tm, w)})
        lines.append(f"Psi({vector_str(tm, v)}) = {vector_str(tm, w)}")
    return EXIT_OK, {"results": out}, "\n".join(lines)


def cmd_act(cfg: Config, args) -> tuple[int, dict, str]:
    tm = cfg.module()
    gens = [parse_gen(tm.cd, g) for g in args.gen]
    vs, names = _vectors_or_basis(tm, args)
    out = []
    lines = []
    for v, n in zip(vs, names):
        w = tm.act_word(gens, v)
        entry = {"vector": vector_to_json(tm, v), "result": vector_to_json(tm, w)}
        line = f"{' '.join(args.gen)} . {vector_str(tm, v)} = {vector_str(tm, w)}"
        if w:
            B = canonical_basis(tm, w.nu, args.oracle)
            coeffs = expand_in_basis(tm, w, B)
            entry["canonical_expansion"] = [c.to_json() for c in coeffs]
            line += "\n    over B: [" + ", ".join(c.pretty() for c in coeffs) + "]"
        out.append(entry)
        lines.append(line)
    return EXIT_OK, {"results": out}, "\n".join(lines)


COMMANDS = {"canon": cmd_canon, "verify": cmd_verify, "gram": cmd_gram, "bar": cmd_bar, "act": cmd_act}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcanon", description="Canonical bases of tensor products of highest weight modules.")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--depth", type=int, help="override the depth cutoff")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--oracle", choices=("off", "check", "force"), default="off")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("canon", help="canonical bases and certificates of all weight spaces")
    sub.add_parser("verify", help="relation, form and bar-involution checks")
    for name, helptext in (("gram", "contravariant form values"), ("bar", "apply the bar involution"), ("act", "apply generators")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--vector", action="append", help="e.g. 'F_i F_j^(2) F_i' or 'eta x F_i eta'")
        sp.add_argument("--nu", help="content, e.g. i=1,j=1 (uses its canonical basis)")
        if name == "act":
            sp.add_argument("--gen", action="append", required=True, help="generator, e.g. E_i; repeat for a product")
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        cfg = load_config(raw, args.depth)
        status, data, pretty = COMMANDS[args.command](cfg, args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CanonError, SpanningFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = pretty if args.format == "pretty" else json.dumps(data, indent=2, ensure_ascii=False)
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
