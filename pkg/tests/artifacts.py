"""Text artifacts for the seeded acceptance runs.

Running ``python tests/artifacts.py NAME`` prints the artifact for one run;
the acceptance suite calls it in fresh interpreters and compares the bytes.
"""
import random
import sys
import time

from fraisse import FINGRAPH, FINLINORD
from fraisse.core import Arrow
from fraisse.generic import back_and_forth, build_fraisse, density_failures, materialize_limit
from fraisse.retracts import proper_amalgamate, random_retractive_span, sets_counterexample, verify_proper
from fraisse.sequences import check_A, check_U, validate_sequence
from fraisse.textio import config_header, dump_rparrow, dump_sequence, dump_tree
from fraisse.trees import build_standard_healthy, embed_initial, extend_arrow, is_t2_arrow, random_tree, subtree

STEPS = 64
SEED = 0


def build_run(seed=SEED):
    start = time.perf_counter()
    g = build_fraisse(FINGRAPH, steps=STEPS, schedule_seed=seed)
    facts = {
        "graph.valid": validate_sequence(g) is None,
        "graph.U3": check_U(g, 3).holds,
        "graph.A3": check_A(g, 3).holds,
    }
    middle = time.perf_counter()
    o = build_fraisse(FINLINORD, steps=STEPS, schedule_seed=seed)
    facts["order.density_failures"] = len(density_failures(materialize_limit(o), STEPS // 2))
    # timings stay out of the artifact text so that it remains reproducible
    facts["seconds"] = (round(middle - start, 1), round(time.perf_counter() - middle, 1))
    return facts, config_header({"run": "build", "seed": seed, "steps": STEPS}) + dump_sequence(g) + dump_sequence(o)


def backforth_run(seed=SEED, depth=8):
    u = build_fraisse(FINLINORD, steps=STEPS, schedule_seed=seed)
    v = build_fraisse(FINLINORD, steps=STEPS, schedule_seed=seed + 1)
    f = FINLINORD.hom(u[0], v[0])
    z = back_and_forth(u, v, f[0], depth)
    lines = [f"k={z.k}", f"l={z.l}"]
    lines += [f"f.{n}={a.positions}" for n, a in enumerate(z.f)]
    lines += [f"g.{n}={a.positions}" for n, a in enumerate(z.g)]
    return z, config_header({"run": "backforth", "seed": seed, "depth": depth}) + "\n".join(lines) + "\n"


def spans_run(seed=SEED, count=50):
    rng = random.Random(seed)
    out, reports = [], []
    for kind in ("set", "graph"):
        for i in range(count):
            f, g = random_retractive_span(rng, kind)
            h, k = proper_amalgamate(f, g)
            rep = verify_proper(f, g, h, k)
            reports.append(rep)
            out.append(f"span {kind} {i}\n" + dump_rparrow(h) + dump_rparrow(k) + "\n".join(rep.records()) + "\n")
    c = sets_counterexample()
    out.append("counterexample\n" + "\n".join(c["report"].records()) + "\n")
    return reports, c, config_header({"run": "spans", "seed": seed, "count": count}) + "".join(out)


def trees_run(seed=SEED, count=100, height=6, target=7):
    rng = random.Random(seed)
    V = build_standard_healthy(target)
    rows, text = [], []
    for i in range(count):
        S = random_tree(rng, height, 40)
        f = embed_initial(S, V)
        keep = {S.root}
        for x in S.order[1:]:
            if S.parent[x] in keep and rng.random() < 0.5:
                keep.add(x)
        T = subtree(S, keep)
        g = Arrow.from_dict(T, V, {x: f(x) for x in T.universe})
        ext = extend_arrow(g, S)
        agrees = all(ext(x) == g(x) for x in T.universe)
        rows.append((S, is_t2_arrow(f), is_t2_arrow(ext), agrees))
        embed = " ".join(map(str, f.positions))
        extended = " ".join(map(str, ext.positions))
        text.append(f"tree {i}\n{dump_tree(S)}embed {embed}\nrestrict {T.size} extend {extended}\n")
    return rows, config_header({"run": "trees", "seed": seed, "count": count}) + "".join(text)


RUNS = {
    "build": lambda: build_run()[1],
    "backforth": lambda: backforth_run()[1],
    "spans": lambda: spans_run()[2],
    "trees": lambda: trees_run()[1],
}

if __name__ == "__main__":
    sys.stdout.write(RUNS[sys.argv[1]]())
