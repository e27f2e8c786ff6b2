"""Command-line front end.

Exit codes: 0 accept / all games passed, 1 reject / a game failed,
2 protocol violation, 3 usage error.  The default seed comes from
BQSIM_SEED when set.

    bqsim commit dfss --n 16 --seed 7
    bqsim ot --n 64 --out runs/ot
    bqsim nip-ham --k 4
    bqsim rr-sumcheck --field-bits 8
    bqsim rr-3col
    bqsim game ot-privacy --n 16 --trials 200 --out runs/otp
    bqsim verify-transcript runs/ot.transcript
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    env = os.environ.get("BQSIM_SEED")
    return int(env) if env else 0


def build_parser() -> _Parser:
    p = _Parser(prog="bqsim", description="bounded-storage protocol engine")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=None):
        sp.add_argument("--seed", type=int, default=_default_seed())
        sp.add_argument("--out", type=str, default=None)
        if n_default is not None:
            sp.add_argument("--n", type=int, default=n_default)

    sp = sub.add_parser("commit", help="run one honest commitment session")
    sp.add_argument("scheme", choices=["dfss", "weak", "abo"])
    sp.add_argument("--code", type=str, default="repetition16")
    common(sp, n_default=16)

    sp = sub.add_parser("ot", help="honest oblivious-transfer session (k parallel instances)")
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--k", type=int, default=1)
    common(sp, n_default=64)

    sp = sub.add_parser("nip-ham", help="one-message Hamiltonicity proof")
    sp.add_argument("--k", type=int, default=1)
    common(sp, n_default=0)

    sp = sub.add_parser("rr-sumcheck", help="two-message compiled sum-check")
    sp.add_argument("--field-bits", type=int, default=8)
    sp.add_argument("--poly", type=str, default=None, help="monomial-per-line polynomial file")
    common(sp, n_default=4)

    sp = sub.add_parser("rr-3col", help="two-message 3-coloring on the triangle")
    common(sp, n_default=4)

    sp = sub.add_parser("game", help="adversary games against the stated bounds")
    sp.add_argument(
        "kind", choices=["binding", "ot-privacy", "rr-binding", "sum-binding-oracle"]
    )
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--delta", type=float, default=0.0)
    sp.add_argument("--field-bits", type=int, default=8)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp, n_default=16)

    sp = sub.add_parser("verify-transcript", help="parse and check a transcript file")
    sp.add_argument("file", type=str)
    return p


def _emit_transcript(transcript, out: str | None) -> None:
    from .transcript import serialize_transcript

    text = serialize_transcript(transcript)
    if out:
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        with open(out + ".transcript", "w") as fh:
            fh.write(text)
        print(f"wrote {out}.transcript")
    else:
        sys.stdout.write(text)


def _run_protocol(protocol: str, args, params: dict) -> int:
    from .session import ACCEPT, VIOLATION, ConfigError, ExperimentConfig, run_session

    try:
        config = ExperimentConfig(protocol, args.seed, params, args.out)
    except ConfigError as err:
        print(f"bqsim: {err}", file=sys.stderr)
        return EXIT_USAGE
    transcript, verdict = run_session(config)
    _emit_transcript(transcript, args.out)
    print(f"verdict: {verdict}")
    if verdict == ACCEPT:
        return EXIT_ACCEPT
    if verdict == VIOLATION:
        return EXIT_VIOLATION
    return EXIT_REJECT


def _game_reports(args) -> list:
    from .adversary import (
        CommitToBitStrategy,
        StoreEverythingStrategy,
        dfss_binding_game,
        ot_privacy_probe,
        rr_sumcheck_binding_game,
        weak_bc_purification_attack,
        weak_bc_sum_binding_oracle,
    )
    from .gf2m import field
    from .polynomials import random_polynomial

    rng = np.random.default_rng(args.seed)
    if args.kind == "binding":
        if args.q >= args.n:
            strategies = [StoreEverythingStrategy(args.n)]
        else:
            strategies = [CommitToBitStrategy(0), CommitToBitStrategy(1)]
        return [dfss_binding_game(s, args.n, args.trials, rng) for s in strategies]
    if args.kind == "ot-privacy":
        names = ["measure-all-0", "measure-all-1", "random-per-qubit", "store-all"]
        return [ot_privacy_probe(name, args.n, 1, args.trials, rng) for name in names]
    if args.kind == "rr-binding":
        poly = random_polynomial(field(args.field_bits), 4, 2, rng)
        return [rr_sumcheck_binding_game(poly, args.trials, rng, n=args.n)]
    # sum-binding-oracle: numeric norm at the requested n plus the attack arms
    n = min(args.n, 8)
    radius = args.delta
    from .adversary import GameArm, GameReport

    # the norm depends only on the ball radius, not the anchor strings
    res = weak_bc_sum_binding_oracle(n, radius, "0" * n, "0" * n)
    oracle = GameReport(
        game="sum-binding-oracle",
        params={"n": n, "delta": radius},
        arms=[GameArm("norm-le-bound", int(res.norm <= res.norm_bound + 1e-9), 1)],
        bound_label="2^(2 h(delta) n - n/2)" + (" [vacuous]" if res.vacuous else ""),
        bound_value=res.norm_bound,
        passed=res.norm <= res.norm_bound + 1e-9,
        notes=[f"norm {res.norm:.6g}, 1 + norm {res.total:.6g}"],
    )
    attack = weak_bc_purification_attack(4, max(args.trials, 200), rng)
    return [oracle, attack]


def _run_game(args) -> int:
    from .reports import emit_report, human_summary, merge_reports

    if args.jobs > 1:
        import concurrent.futures

        per = max(1, args.trials // args.jobs)
        children = np.random.SeedSequence(args.seed).spawn(args.jobs)
        seeds = [int(c.generate_state(1)[0]) for c in children]
        chunks = []
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = [pool.submit(_game_worker, vars(args), s, per) for s in seeds]
            for f in futs:
                chunks.append(f.result())
        by_game = {}
        for reports in chunks:
            for r in reports:
                by_game.setdefault(r.game + r.params.get("strategy", ""), []).append(r)
        reports = [merge_reports(parts) for parts in by_game.values()]
    else:
        reports = _game_reports(args)
    if args.out:
        summary = emit_report(reports, args.out)
        print(f"wrote {args.out}.tsv / .txt / .png")
    else:
        summary = human_summary(reports)
    print(summary)
    return EXIT_ACCEPT if all(r.passed for r in reports) else EXIT_REJECT


def _game_worker(arg_dict: dict, seed: int, trials: int):
    ns = argparse.Namespace(**arg_dict)
    ns.seed = seed
    ns.trials = trials
    return _game_reports(ns)


def _run_rr_sumcheck_file(args) -> int:
    from .gf2m import field
    from .polynomials import parse_polynomial
    from .proofs import sumcheck_claim, sumcheck_protocol
    from .rr import rr_session
    from .session import ACCEPT

    try:
        with open(args.poly) as fh:
            poly = parse_polynomial(fh.read(), field(args.field_bits))
    except (OSError, ValueError) as err:
        print(f"bqsim: {err}", file=sys.stderr)
        return EXIT_USAGE
    pi = sumcheck_protocol(poly, sumcheck_claim(poly))
    ok, transcript = rr_session(pi, n=args.n, seed=args.seed, protocol_id="rr-sumcheck")
    _emit_transcript(transcript, args.out)
    print(f"verdict: {ACCEPT if ok else 'reject'}")
    return EXIT_ACCEPT if ok else EXIT_REJECT


def _verify_transcript(path: str) -> int:
    from .transcript import TranscriptParseError, parse_transcript, serialize_transcript

    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        print(f"bqsim: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        t = parse_transcript(text)
    except TranscriptParseError as err:
        print(f"bqsim: parse error: {err}", file=sys.stderr)
        return EXIT_REJECT
    if serialize_transcript(t) != text:
        print("bqsim: transcript is not in canonical form", file=sys.stderr)
        return EXIT_REJECT
    # protocols whose wire format promises quantum parts before the bound
    # and classical parts after must show that order
    kinds = [e.kind for e in t.events]
    if "bound-marker" in kinds and t.protocol in ("ot", "nip-ham", "commit-dfss", "commit-abo"):
        first_bound = kinds.index("bound-marker")
        if any(k == "classical" for k in kinds[:first_bound]):
            print("bqsim: classical payload precedes the memory bound", file=sys.stderr)
            return EXIT_VIOLATION
    print(f"ok: {t.protocol} seed={t.seed} events={len(t.events)} bytes={t.byte_length()}")
    return EXIT_ACCEPT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "commit":
        protocol = {"dfss": "commit-dfss", "weak": "commit-weak", "abo": "commit-abo"}[args.scheme]
        params = {"code": args.code} if args.scheme == "abo" else {"n": args.n}
        return _run_protocol(protocol, args, params)
    if args.command == "ot":
        return _run_protocol("ot", args, {"n": args.n, "ell": args.ell, "k": args.k})
    if args.command == "nip-ham":
        return _run_protocol("nip-ham", args, {"k": args.k, "n": args.n})
    if args.command == "rr-sumcheck":
        if args.poly:
            return _run_rr_sumcheck_file(args)
        return _run_protocol("rr-sumcheck", args, {"n": args.n, "field_bits": args.field_bits})
    if args.command == "rr-3col":
        return _run_protocol("rr-3col", args, {"n": args.n})
    if args.command == "game":
        return _run_game(args)
    if args.command == "verify-transcript":
        return _verify_transcript(args.file)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
