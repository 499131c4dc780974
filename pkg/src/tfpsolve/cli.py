"""Command-line front end.

Subcommands: ``decide`` (YES/NO), ``solve`` (YES plus a seeding and the match
trace), ``gen`` (write a generated instance, plus a .witness sidecar when
planted), ``verify-seeding`` (replay a seeding), ``check-structure``
(niceness report and repair), ``bench`` (wall-clock table; timings are the
one output that is not reproducible byte-for-byte).

Exit codes: 0 the favorite can win / the command succeeded, 1 it cannot /
the seeding loses, 2 any error.  Output for a fixed file, algorithm, seed
and multiplier is byte-identical across runs.  TFP_THREADS is accepted and
validated for compatibility; this implementation stays single-threaded.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from .arborescence import lba_to_seeding
from .core import (
    ParseError,
    Seeding,
    Tournament,
    format_tournament,
    format_trace,
    parse_tournament,
    simulate,
)
from .embed import solve_exact
from .indeg import IndegConfig, solve_indeg
from .instances import gen_planted_yes, gen_random
from .oracles import brute_force_decide, niceness, repair_to_nice
from .outdeg import solve_outdeg

ALGOS = ("auto", "brute", "exact", "outdeg", "indeg")


def _load(path: str) -> Tournament:
    return parse_tournament(Path(path).read_text())


def _cfg(args: argparse.Namespace) -> IndegConfig:
    return IndegConfig(
        rng_seed=args.seed,
        iteration_multiplier=args.multiplier,
        max_iterations_override=args.max_iterations,
    )


def _pick(choice: str, t: Tournament) -> tuple[str, str]:
    """Resolve ``auto`` to a concrete algorithm; returns (algo, display label)."""
    if choice != "auto":
        return choice, choice
    if t.ell < t.num_rounds:
        algo = "outdeg"  # the favorite cannot even win enough matches
    elif t.n <= 16:
        algo = "exact"
    else:
        algo = "indeg"
    return algo, f"{algo} (auto)"


def _run(algo: str, t: Tournament, cfg: IndegConfig) -> Seeding | None:
    if algo == "brute":
        return brute_force_decide(t)
    if algo == "exact":
        lba = solve_exact(t)
        return None if lba is None else lba_to_seeding(lba)
    if algo == "outdeg":
        return solve_outdeg(t)
    return solve_indeg(t, cfg)


def _read_seeding(args: argparse.Namespace, n: int) -> Seeding:
    text = args.seeding if args.seeding is not None else Path(args.seeding_file).read_text()
    try:
        order = tuple(int(p) for p in text.split())
    except ValueError:
        raise ValueError("seeding must be whitespace-separated integers") from None
    if len(order) != n:
        raise ValueError(f"seeding lists {len(order)} players, tournament has {n}")
    return Seeding(order)


def cmd_decide(args: argparse.Namespace) -> int:
    t = _load(args.file)
    algo, label = _pick(args.algo, t)
    s = _run(algo, t, _cfg(args))
    print("YES" if s is not None else "NO")
    print(f"algo: {label}")
    return 0 if s is not None else 1


def cmd_solve(args: argparse.Namespace) -> int:
    t = _load(args.file)
    algo, label = _pick(args.algo, t)
    s = _run(algo, t, _cfg(args))
    print("YES" if s is not None else "NO")
    print(f"algo: {label}")
    if s is None:
        return 1
    print("seeding:", " ".join(map(str, s.leaf_order)))
    print(format_trace(simulate(t, s)))
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    witness = None
    if args.planted:
        t, witness = gen_planted_yes(args.n, args.k, seed=args.seed)
    else:
        t = gen_random(args.n, args.k, seed=args.seed)
    comment = (
        f"generated: n={args.n} k={args.k} seed={args.seed} "
        f"planted={'yes' if args.planted else 'no'}"
    )
    out = Path(args.out)
    out.write_text(format_tournament(t, comments=(comment,)))
    print(f"wrote {out}")
    if witness is not None:
        side = Path(str(out) + ".witness")
        side.write_text(" ".join(map(str, witness.leaf_order)) + "\n")
        print(f"wrote {side}")
    return 0


def cmd_verify_seeding(args: argparse.Namespace) -> int:
    t = _load(args.file)
    s = _read_seeding(args, t.n)
    trace = simulate(t, s)
    print("seeding:", " ".join(map(str, s.leaf_order)))
    print(format_trace(trace))
    ok = trace.champion == t.vstar
    print(f"winning: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_check_structure(args: argparse.Namespace) -> int:
    t = _load(args.file)
    s = _read_seeding(args, t.n)
    trace = simulate(t, s)
    if trace.champion != t.vstar:
        print("winning: no")
        return 1
    print("winning: yes")
    rep = niceness(t, trace)
    for i, ok in enumerate(rep.per_round):
        print(f"round {i + 1}: {'nice' if ok else 'not-nice'}")
    print(f"nice: {'yes' if rep.all_nice else 'no'}")
    fixed, rewrites = repair_to_nice(t, s)
    print("repaired seeding:", " ".join(map(str, fixed.leaf_order)))
    print(f"repair rounds: {rewrites}")
    fixed_trace = simulate(t, fixed)
    print(f"repaired nice: {'yes' if niceness(t, fixed_trace).all_nice else 'no'}")
    m = min(t.k, t.num_rounds)
    standing = len(fixed_trace.survivors[m] & t.in_neighbors)
    print(f"conquerors after round {m}: {standing}")
    print(f"conqueror-elimination-check: {'pass' if standing == 0 else 'fail'}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = _cfg(args)
    print(f"{'file':<28} {'algo':<7} {'n':>4} {'verdict':<7} {'ms':>9}")
    for path in args.files:
        t = _load(path)
        algo, _ = _pick(args.algo, t)
        start = time.perf_counter()
        s = _run(algo, t, cfg)
        ms = (time.perf_counter() - start) * 1e3
        verdict = "YES" if s is not None else "NO"
        print(f"{Path(path).name:<28} {algo:<7} {t.n:>4} {verdict:<7} {ms:>9.1f}")
    return 0


def _add_solver_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--algo", choices=ALGOS, default="auto")
    sp.add_argument("--seed", type=int, default=0, help="seed for the randomized solver")
    sp.add_argument(
        "--multiplier",
        type=float,
        default=1.0,
        help="scales the randomized draw budget (miss probability e**-multiplier)",
    )
    sp.add_argument(
        "--max-iterations",
        type=int,
        default=None,
        help="hard override for the randomized draw budget",
    )


def _add_seeding_flags(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--seeding", help="leaf order as a quoted list of players")
    grp.add_argument("--seeding-file", help="file holding the leaf order (e.g. a .witness)")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tfpsolve",
        description="Decide and construct single-elimination seedings that crown a chosen favorite.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="print YES/NO for the favorite")
    d.add_argument("file")
    _add_solver_flags(d)
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("solve", help="decide and print a winning seeding with its trace")
    s.add_argument("file")
    _add_solver_flags(s)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("out")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--planted", action="store_true", help="guarantee YES and emit a .witness")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify-seeding", help="replay a seeding and report the champion")
    v.add_argument("file")
    _add_seeding_flags(v)
    v.set_defaults(func=cmd_verify_seeding)

    c = sub.add_parser("check-structure", help="niceness report and repair for a winning seeding")
    c.add_argument("file")
    _add_seeding_flags(c)
    c.set_defaults(func=cmd_check_structure)

    b = sub.add_parser("bench", help="time the chosen algorithm on instance files")
    b.add_argument("files", nargs="+")
    _add_solver_flags(b)
    b.set_defaults(func=cmd_bench)

    return p


def main(argv: Sequence[str] | None = None) -> int:
    threads = os.environ.get("TFP_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print("error: TFP_THREADS must be a positive integer", file=sys.stderr)
            return 2
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
