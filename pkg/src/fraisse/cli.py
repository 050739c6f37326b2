"""Command-line front end.

Exit status: 0 when every verdict holds, 1 when a mathematical property
fails (the report carries the witness), 2 for usage, parse and operational
errors.  Every artifact starts with ``# key=value`` lines recording the
configuration, so identical configurations give byte-identical output.
"""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .core import get_category
from .errors import FraisseError, ParseError, PreconditionFailed

PROPERTIES = ("amalgamation", "jep", "dominating", "all")


@dataclass
class RunConfig:
    command: str
    category: str = "fingraph"
    bound: int = 3
    cap: int | None = None
    steps: int = 16
    depth: int | None = None
    seed: int = 0
    inputs: list = field(default_factory=list)
    out: str | None = None
    fmt: str = "records"
    action: str | None = None
    prop: str = "all"
    vector: str | None = None

    def header(self) -> dict:
        h = {
            "command": self.command,
            "category": self.category,
            "bound": self.bound,
            "steps": self.steps,
            "depth": self.depth,
            "seed": self.seed,
            "format": self.fmt,
            "version": __version__,
        }
        if self.action:
            h["action"] = self.action
        if self.command == "check":
            h["property"] = self.prop
            h["cap"] = self.cap
        if self.inputs:
            h["inputs"] = ",".join(Path(p).name for p in self.inputs)
        if self.vector is not None:
            h["vector"] = self.vector
        return h


class Report:
    def __init__(self):
        self.facts: list = []
        self.ok = True

    def add(self, key, value):
        self.facts.append((key, value))

    def extend(self, lines):
        for line in lines:
            k, _, v = line.partition("=")
            self.add(k, v)

    def fail(self):
        self.ok = False

    def render(self, fmt: str) -> str:
        if fmt == "records":
            return "".join(f"{k}={v}\n" for k, v in self.facts)
        width = max((len(k) for k, _ in self.facts), default=0)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in self.facts)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("bounds must be at least 1")
    return v


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _need_inputs(cfg, n):
    if len(cfg.inputs) < n:
        raise ParseError(f"{cfg.command} {cfg.action or ''} needs {n} input file(s) via --in")


# commands ----------------------------------------------------------------------------
def cmd_check(cfg: RunConfig, rep: Report):
    from .properties import check_amalgamation, check_jep, is_dominating, one_point_family

    cat = get_category(cfg.category)
    props = ("amalgamation", "jep", "dominating") if cfg.prop == "all" else (cfg.prop,)
    for name in props:
        if name == "amalgamation":
            r = check_amalgamation(cat, cfg.bound, cfg.cap)
        elif name == "jep":
            r = check_jep(cat, cfg.bound, cfg.cap)
        else:
            r = is_dominating(cat, one_point_family(cat, cfg.bound + 1), cfg.bound)
        rep.extend(r.records())
        if not r.holds:
            rep.fail()


def _build(cfg: RunConfig, seed=None):
    from .generic import build_fraisse

    cat = get_category(cfg.category)
    return build_fraisse(cat, steps=cfg.steps, schedule_seed=cfg.seed if seed is None else seed, bound=cfg.bound)


def cmd_build(cfg: RunConfig, rep: Report):
    from .sequences import validate_sequence
    from .textio import dump_sequence

    seq = _build(cfg)
    bad = validate_sequence(seq)
    rep.add("length", len(seq))
    rep.add("sizes", ",".join(str(seq.category.size(x)) for x in seq.objects))
    rep.add("valid", "yes" if bad is None else f"no {bad}")
    if bad is not None:
        rep.fail()
    return dump_sequence(seq)


def cmd_limit(cfg: RunConfig, rep: Report):
    from .generic import density_failures, extension_axiom_failures, materialize_limit
    from .textio import load_sequence

    seq = load_sequence(_read(cfg.inputs[0])) if cfg.inputs else _build(cfg)
    lim = materialize_limit(seq)
    kind = lim.structure.kind
    stage = cfg.depth if cfg.depth is not None else max(len(seq) // 4, 0)
    stage = min(stage, len(seq) - 1)
    rep.add("stage", stage)
    rep.add("points", len(lim.points(stage)))
    rep.add("limit_size", lim.structure.size)
    if kind == "graph":
        bad = extension_axiom_failures(lim, stage)
        rep.add("check", "extension-axiom-2")
    elif kind == "linorder":
        bad = density_failures(lim, stage)
        rep.add("check", "density")
    else:
        bad = []
        rep.add("check", "none")
    rep.add("failures", len(bad))
    if bad:
        rep.add("witness", bad[0])
        rep.fail()


def cmd_backforth(cfg: RunConfig, rep: Report):
    from .generic import back_and_forth
    from .sequences import transformations_equivalent

    depth = cfg.depth or 8
    u = _build(cfg, cfg.seed)
    v = _build(cfg, cfg.seed + 1)
    cat = u.category
    f = cat.hom(u[0], v[0], limit=1)
    if not f:
        raise PreconditionFailed("the first objects admit no arrow")
    z = back_and_forth(u, v, f[0], depth)
    star = z.star_failures()
    (gf, i1), (fg, i2) = z.round_trips()
    eq1 = transformations_equivalent(gf, i1)
    eq2 = transformations_equivalent(fg, i2)
    rep.add("k", ",".join(map(str, z.k)))
    rep.add("l", ",".join(map(str, z.l)))
    rep.add("star_failures", len(star))
    rep.add("GF_equivalent_identity", "yes" if eq1 else "no")
    rep.add("FG_equivalent_identity", "yes" if eq2 else "no")
    if star or not (eq1 and eq2):
        rep.fail()


def cmd_embed(cfg: RunConfig, rep: Report):
    from .generic import embed_sequence
    from .textio import load_sequence

    _need_inputs(cfg, 1)
    x = load_sequence(_read(cfg.inputs[0]))
    u = _build(cfg)
    arrow = embed_sequence(x, u, cfg.depth)
    rep.add("phi", ",".join(map(str, arrow.rep.phi)))
    for a, c in enumerate(arrow.rep.components):
        rep.add(f"component.{a}", " ".join(map(str, c.positions)))


def cmd_rp(cfg: RunConfig, rep: Report):
    from . import retracts as rt
    from .textio import dump_rparrow, load_rparrows, load_sequence

    action = cfg.action
    if action == "counterexample":
        c = rt.sets_counterexample()
        v = rt.sets_counterexample(variant=True)
        rep.add("amalgamation", "yes" if c["amalgamates"] else "no")
        rep.add("proper", "yes" if c["proper"] else "no")
        rep.add("witness", c["witness"])
        rep.add("eg_rf_witness", c["eg_rf_b"])
        rep.add("rk_eh_witness", c["rk_eh_b"])
        rep.add("second_identity", "holds" if c["second_identity"] else "fails")
        rep.add("variant_second_identity", "holds" if v["second_identity"] else "fails")
        rep.add("pushout_amalgam_proper", "yes" if c["pushout_proper"] else "no")
        rep.fail()
    elif action == "amalgamate":
        if cfg.inputs:
            spans = load_rparrows(_read(cfg.inputs[0]))
            if len(spans) != 2:
                raise ParseError("rp amalgamate expects exactly two rparrow blocks")
            f, g = spans
        else:
            kind = "set" if cfg.category.startswith("finset") else "graph"
            f, g = rt.random_retractive_span(random.Random(cfg.seed), kind)
        h, k = rt.proper_amalgamate(f, g)
        r = rt.verify_proper(f, g, h, k)
        rep.extend(r.records())
        rep.add("h", dump_rparrow(h).strip().replace("\n", " | "))
        rep.add("k", dump_rparrow(k).strip().replace("\n", " | "))
        if not r.proper:
            rep.fail()
    elif action == "lift":
        _need_inputs(cfg, 1)
        seq = load_sequence(_read(cfg.inputs[0]))
        base = get_category("fingraphhom") if seq.category.name == "fingraph" else seq.category
        y = rt.lift_sequence(seq, base=base)
        rep.add("length", len(y))
        for i in range(len(y) - 1):
            rep.add(f"r.{i}", " ".join(map(str, y.generator(i).r.positions)))
        rep.add("functoriality_failures", len(rt.rp_functoriality_failures(y)))
    else:
        raise ParseError("rp needs an action: amalgamate, counterexample or lift")


def cmd_trees(cfg: RunConfig, rep: Report):
    from . import trees as tr
    from .textio import load_arrow, load_tree

    action = cfg.action
    if action not in ("healthy", "decompose", "embed", "extend"):
        raise ParseError("trees needs an action: healthy, decompose, embed or extend")
    if action == "extend":
        _need_inputs(cfg, 2)
        f = load_arrow(_read(cfg.inputs[0]))
        S, _ = load_tree(_read(cfg.inputs[1]))
        g = tr.extend_arrow(f, S)
        ok = tr.is_t2_arrow(g)
        rep.add("map", " ".join(map(str, g.positions)))
        rep.add("t2_arrow", "yes" if ok else "no")
        rep.add("agrees", "yes" if all(g(x) == f(x) for x in f.source.universe) else "no")
        if not ok:
            rep.fail()
        return
    if cfg.inputs:
        T, order = load_tree(_read(cfg.inputs[0]))
    else:
        T, order = tr.build_standard_healthy(cfg.depth or 3), None
    if action == "healthy":
        ok = tr.is_healthy(T)
        rep.add("nodes", T.size)
        rep.add("height", T.depth_height)
        rep.add("healthy", "yes" if ok else "no")
        if not ok:
            rep.fail()
    elif action == "decompose":
        d = tr.natural_decomposition(T, order)
        for k, c in enumerate(d.chains):
            rep.add(f"chain.{k}", " ".join(str(T.index[x]) for x in c))
        rep.add("partition", "yes" if not tr.decomposition_failures(T, d) else "no")
    else:
        V = tr.build_standard_healthy(cfg.depth if cfg.depth is not None else T.depth_height)
        f = tr.embed_initial(T, V)
        ok = tr.is_t2_arrow(f)
        rep.add("target_nodes", V.size)
        rep.add("map", " ".join(map(str, f.positions)))
        rep.add("t2_arrow", "yes" if ok else "no")
        if not ok:
            rep.fail()


def cmd_normed(cfg: RunConfig, rep: Report):
    from . import normed as nm
    from .textio import load_linear_maps, load_structure

    action = cfg.action
    if action == "cknonext":
        r = nm.ck_nonextension_check()
        rep.add("isometries", r["isometries"])
        rep.add("extending", r["extending"])
        rep.add("T_isometric", "yes" if r["T_isometric"] else "no")
        rep.add("alpha", r["alpha"])
        rep.add("norm_u", r["norm_u"])
        rep.add("norm_preimage", r["norm_preimage"])
        rep.add("lower_bound", r["lower_bound"])
        if r["extending"]:
            rep.fail()
    elif action == "norm":
        _need_inputs(cfg, 1)
        sp = load_structure(_read(cfg.inputs[0]))
        if not isinstance(sp, nm.PolyNormedSpace):
            raise ParseError("expected a pnspace block")
        if cfg.vector is None:
            raise ParseError("normed norm needs --vector")
        from fractions import Fraction

        try:
            x = tuple(Fraction(t) for t in cfg.vector.replace(",", " ").split())
        except ValueError as exc:
            raise ParseError(f"bad vector: {exc}") from exc
        rep.add("norm", nm.minkowski(sp, x))
    elif action in ("amalgamate", "pushout"):
        _need_inputs(cfg, 1)
        maps = load_linear_maps(_read(cfg.inputs[0]))
        if action == "amalgamate":
            if len(maps) != 2:
                raise ParseError("normed amalgamate expects two linmap blocks")
            am = nm.amalgamate_norms(*maps)
        else:
            if len(maps) != 4:
                raise ParseError("normed pushout expects four linmap blocks: f, g and their left inverses")
            am = nm.pushout_norms(*maps)
        iso_f, iso_g = nm.is_isometric(am.f2), nm.is_isometric(am.g2)
        rep.add("dimension", am.W.dim)
        rep.add("vertices", len(am.W.vertices))
        rep.add("f2_isometric", "yes" if iso_f else "no")
        rep.add("g2_isometric", "yes" if iso_g else "no")
        rep.add("mediator_unique", "yes" if am.mediator_is_unique() else "no")
        if not (iso_f and iso_g):
            rep.fail()
    else:
        raise ParseError("normed needs an action: norm, amalgamate, pushout or cknonext")


COMMANDS = {
    "check": cmd_check,
    "build": cmd_build,
    "limit": cmd_limit,
    "backforth": cmd_backforth,
    "embed": cmd_embed,
    "rp": cmd_rp,
    "trees": cmd_trees,
    "normed": cmd_normed,
}

ACTIONS = {
    "rp": ("amalgamate", "counterexample", "lift"),
    "trees": ("healthy", "decompose", "embed", "extend"),
    "normed": ("norm", "amalgamate", "pushout", "cknonext"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraisse", description="Bounded Fraisse theory for finite structures.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name in ACTIONS:
            p.add_argument("action", choices=ACTIONS[name])
        p.add_argument("--category", default="finlinord" if name == "backforth" else "fingraph")
        p.add_argument("--bound", type=_positive, default=3)
        p.add_argument("--steps", type=_positive, default=16)
        p.add_argument("--depth", type=_positive, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--in", dest="inputs", action="append", default=[])
        p.add_argument("--out", default=None)
        p.add_argument("--format", dest="fmt", choices=("text", "records"), default="records")
        if name == "check":
            p.add_argument("--property", dest="prop", choices=PROPERTIES, default="all")
            p.add_argument("--cap", type=_positive, default=None)
        if name == "normed":
            p.add_argument("--vector", default=None)
    return parser


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns the exit status and the artifact text."""
    from .textio import config_header

    rep = Report()
    header = config_header(cfg.header())
    try:
        artifact = COMMANDS[cfg.command](cfg, rep)
    except PreconditionFailed as exc:
        rep.add("error", exc)
        if exc.report is not None:
            rep.extend(exc.report.records())
        return 1, header + rep.render(cfg.fmt)
    except KeyError as exc:
        rep.add("error", f"unknown name {exc}")
        return 2, header + rep.render(cfg.fmt)
    except FraisseError as exc:
        rep.add("error", f"{type(exc).__name__}: {exc}")
        return 2, header + rep.render(cfg.fmt)
    status = 0 if rep.ok else 1
    if artifact is not None:
        facts = "".join(f"# result.{k}={v}\n" for k, v in rep.facts)
        return status, header + facts + artifact
    return status, header + rep.render(cfg.fmt)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        category=args.category,
        bound=args.bound,
        cap=getattr(args, "cap", None),
        steps=args.steps,
        depth=args.depth,
        seed=args.seed,
        inputs=args.inputs,
        out=args.out,
        fmt=args.fmt,
        action=getattr(args, "action", None),
        prop=getattr(args, "prop", "all"),
        vector=getattr(args, "vector", None),
    )
    status, text = run(cfg)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if status == 2:
        print(text.splitlines()[-1], file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
