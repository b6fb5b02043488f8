"""Operator command line.

Machine-parseable JSON records go to standard output; diagnostics go to
standard error.  Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

import argparse
import json
import sys

from .errors import AdaptEnvError
from .harness import SimulationConfig, run_simulation
from .protocol import (
    ProtocolServer,
    export_testset,
    read_checkpoint,
    serve_stdio,
    serve_tcp,
    write_checkpoint,
)
from .registry import default_registry
from .rng import SeedSequencer
from .scheduler import init_state
from .types import ProblemInstance


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(record) -> None:
    print(json.dumps(record, separators=(",", ":")))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adaptenv",
                     description="Verifiable environments with adaptive difficulty")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    sub.add_parser("list", help="print environment descriptors")

    gen = sub.add_parser("gen", help="generate problem instances")
    gen.add_argument("--env", required=True)
    gen.add_argument("--difficulty", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-n", "--count", type=int, default=1)
    gen.add_argument("--no-reference", action="store_true",
                     help="omit reference answers from the output records")

    verify = sub.add_parser("verify", help="verify a model output against an instance")
    verify.add_argument("--env", default=None,
                        help="expected env_id (checked against the instance)")
    verify.add_argument("--problem", required=True,
                        help="file holding one canonical instance record")
    verify.add_argument("--output", required=True,
                        help="file holding the raw model output text")

    simulate = sub.add_parser("simulate", help="run a synthetic-policy simulation")
    simulate.add_argument("--config", required=True,
                          help="JSON file of simulation settings")
    simulate.add_argument("--out", required=True,
                          help="destination file for per-step metric records")

    serve = sub.add_parser("serve", help="serve the line protocol")
    serve.add_argument("--state", default=None,
                       help="checkpoint file to restore (and update on save)")
    serve.add_argument("--listen", default="stdio",
                       help="'stdio' or HOST:PORT")
    serve.add_argument("--seed", type=int, default=0,
                       help="master seed when starting without a checkpoint")
    serve.add_argument("--include-reference", action="store_true",
                       help="debug flag: include reference answers in problems")

    export = sub.add_parser("export-testset", help="export a fixed evaluation dataset")
    export.add_argument("--envs", default="all",
                        help="comma-separated env ids, or 'all'")
    export.add_argument("--per-env", type=int, required=True)
    export.add_argument("--low", type=int, default=0)
    export.add_argument("--high", type=int, required=True)
    export.add_argument("--seed", type=int, default=0)
    export.add_argument("--out", default=None,
                        help="destination file (default: standard output)")

    sub.add_parser("manifest", help="print per-environment schema manifests")

    plot = sub.add_parser("plot", help="render a metrics file to a static image")
    plot.add_argument("--metrics", required=True,
                      help="per-step metric records from 'simulate'")
    plot.add_argument("--out", required=True, help="image file to write")

    return parser


def _cmd_list(args) -> int:
    for descriptor in default_registry().descriptors():
        _emit(descriptor.to_record())
    return 0


def _cmd_gen(args) -> int:
    registry = default_registry()
    cursor = SeedSequencer(args.seed)
    for _ in range(args.count):
        instance = registry.generate(args.env, args.difficulty,
                                     cursor.next(args.env))
        record = instance.to_record()
        if args.no_reference:
            record.pop("reference_answer", None)
        _emit(record)
    return 0


def _cmd_verify(args) -> int:
    with open(args.problem, "r", encoding="utf-8") as fh:
        instance = ProblemInstance.from_record(json.loads(fh.read()))
    if args.env is not None and args.env != instance.env_id:
        raise AdaptEnvError(
            f"instance is for {instance.env_id!r}, not {args.env!r}"
        )
    with open(args.output, "r", encoding="utf-8") as fh:
        output = fh.read()
    verdict = default_registry().verify(instance, output)
    _emit({
        "env_id": instance.env_id,
        "reward": verdict.reward,
        "category": verdict.category,
        "detail": verdict.detail,
    })
    return 0


def _cmd_simulate(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = SimulationConfig.from_dict(json.load(fh))
    history = run_simulation(config)
    with open(args.out, "w", encoding="utf-8") as fh:
        for metrics in history:
            fh.write(json.dumps(metrics.to_record(), separators=(",", ":")) + "\n")
    last = history[-1] if history else None
    _emit({
        "steps": len(history),
        "mode": config.mode,
        "final_effective_prompt_ratio":
            last.effective_prompt_ratio if last else None,
        "final_per_env_high": last.per_env_high if last else None,
        "final_skill": last.policy_skill_snapshot if last else None,
        "out": args.out,
    })
    return 0


def _cmd_serve(args) -> int:
    registry = default_registry()
    if args.state:
        try:
            state, sequencer = read_checkpoint(args.state)
        except FileNotFoundError:
            state = init_state(
                registry.env_ids(),
                max_difficulty={
                    e: registry.get(e).max_supported_difficulty
                    for e in registry.env_ids()
                },
            )
            sequencer = SeedSequencer(args.seed)
    else:
        state = init_state(
            registry.env_ids(),
            max_difficulty={
                e: registry.get(e).max_supported_difficulty
                for e in registry.env_ids()
            },
        )
        sequencer = SeedSequencer(args.seed)
    server = ProtocolServer(registry, state, sequencer,
                            include_reference=args.include_reference)
    try:
        if args.listen == "stdio":
            serve_stdio(server)
        else:
            host, _, port_text = args.listen.rpartition(":")
            if not host or not port_text.isdigit():
                raise AdaptEnvError(f"bad listen address: {args.listen!r}")

            def announce(address):
                print(f"listening on {address[0]}:{address[1]}",
                      file=sys.stderr, flush=True)

            serve_tcp(server, host, int(port_text), ready_callback=announce)
    finally:
        if args.state:
            write_checkpoint(args.state, state, sequencer)
    return 0


def _cmd_export_testset(args) -> int:
    registry = default_registry()
    env_ids = (registry.env_ids() if args.envs == "all"
               else [e for e in args.envs.split(",") if e])
    dataset = export_testset(registry, env_ids, args.per_env,
                             args.low, args.high, args.seed)
    lines = [json.dumps(inst.to_record(), separators=(",", ":"))
             for inst in dataset]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        _emit({"problems": len(dataset), "envs": len(env_ids), "out": args.out})
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_manifest(args) -> int:
    for manifest in default_registry().manifests():
        _emit(manifest)
    return 0


def _cmd_plot(args) -> int:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise AdaptEnvError(
            "plotting requires matplotlib (pip install adaptenv[plot])"
        ) from None
    steps, ratios, mean_high = [], [], []
    with open(args.metrics, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            steps.append(record["step"])
            ratios.append(record["effective_prompt_ratio"])
            highs = record.get("per_env_high") or {}
            mean_high.append(
                sum(highs.values()) / len(highs) if highs else 0.0
            )
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ax1.plot(steps, ratios)
    ax1.set_ylabel("effective prompt ratio")
    ax1.set_ylim(-0.05, 1.05)
    ax2.plot(steps, mean_high)
    ax2.set_ylabel("mean frontier difficulty")
    ax2.set_xlabel("step")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    _emit({"points": len(steps), "out": args.out})
    return 0


_COMMANDS = {
    "list": _cmd_list,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
    "export-testset": _cmd_export_testset,
    "manifest": _cmd_manifest,
    "plot": _cmd_plot,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.subcommand](args)
    except AdaptEnvError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(run_cli())
