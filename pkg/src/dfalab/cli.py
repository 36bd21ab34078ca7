"""Command-line entry point.

Subcommands: solve, compile-kozen, compile-linear, amplify, simulate,
savitch, verify, bench.  Exit codes follow one convention throughout:
0 for a positive answer (nonempty / accept / reachable / all agree),
1 for the negative answer, 2 for errors.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from dataclasses import replace
from pathlib import Path

from .amplify import amplify, group_size
from .automata import (DEFAULT_PRODUCT_CAP, Dfa, IntersectionInstance,
                       search_intersection)
from .corpus import (modular_counter_instance, random_input, random_machine)
from .encoding import TraceEncoding
from .engine import ENGINE_NAMES, default_engine
from .errors import DfalabError, StateSpaceTooLarge
from .formats import (bench_csv_text, emit_metadata, emit_ntm, load_instance,
                      parse_metadata, parse_ntm, save_instance)
from .machine import (DEFAULT_CONFIG_CAP, find_accepting_run, oracle_accepts,
                      savitch_accepts)
from .reductions import (CompiledFamily, Provenance, compile_kozen,
                         compile_linear, decode_witness, kozen_block_length)

STRATEGIES = ("on_the_fly", "materialized")
FAULTS = ("none", "always-final", "never-final")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dfalab",
        description="DFA intersection non-emptiness workbench: solvers, "
                    "machine-to-DFA compilers, amplification, verification "
                    "and benchmarks.")
    parser.add_argument("--strict", action="store_true",
                        help="reject non-total DFA files instead of adding a dead state")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for generated corpora (printed in reports)")
    parser.add_argument("--cap", type=int, default=None,
                        help="override the product-state / configuration caps")
    parser.add_argument("--out", default=None,
                        help="output directory or file, depending on the command")
    parser.add_argument("--engine", choices=ENGINE_NAMES, default=None,
                        help="search kernel (default: compiled when available)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide intersection non-emptiness of an instance")
    p.add_argument("instance", help="path to an .int file")
    p.add_argument("--strategy", choices=STRATEGIES, default="on_the_fly")
    p.add_argument("--step-cap", type=int, default=None,
                   help="only look for witnesses up to this length")

    p = sub.add_parser("compile-kozen",
                       help="compile machine acceptance into k+1 DFAs")
    p.add_argument("machine", help="path to an .ntm file")
    p.add_argument("--input", required=True, help="input bit string")
    p.add_argument("-k", "--blocks", type=int, default=1,
                   help="number of work-tape blocks (default 1)")
    p.add_argument("--no-stay", action="store_true",
                   help="reject machines that use Stay moves")

    p = sub.add_parser("compile-linear",
                       help="compile machine acceptance into 1+(n+2)+2S+1 DFAs")
    p.add_argument("machine", help="path to an .ntm file")
    p.add_argument("--input", required=True, help="input bit string")
    p.add_argument("--space", type=int, required=True, help="work-tape cells")
    p.add_argument("--no-stay", action="store_true",
                   help="reject machines that use Stay moves")

    p = sub.add_parser("amplify",
                       help="collapse an instance to k DFAs via group products")
    p.add_argument("instance", help="path to an .int file")
    p.add_argument("-k", "--target", type=int, required=True)

    p = sub.add_parser("simulate", help="run the exhaustive acceptance oracle")
    p.add_argument("machine", help="path to an .ntm file")
    p.add_argument("--input", required=True)
    p.add_argument("--space", type=int, required=True)

    p = sub.add_parser("savitch",
                       help="decide acceptance via the halving-recursion reachability")
    p.add_argument("machine", help="path to an .ntm file")
    p.add_argument("--input", required=True)
    p.add_argument("--space", type=int, required=True)
    p.add_argument("--budget", type=int, required=True, help="step budget")

    p = sub.add_parser("verify",
                       help="cross-validate both compilers against the oracle "
                            "on a random corpus")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-input-len", type=int, default=5)
    p.add_argument("--max-space", type=int, default=3)
    p.add_argument("--construction", choices=("both", "kozen", "linear"),
                   default="both")
    p.add_argument("--inject-fault", choices=FAULTS, default="none",
                   help="deliberately break the compiled family (self-test hook)")

    p = sub.add_parser("bench", help="scaling measurements, CSV output")
    p.add_argument("--family", choices=("modcounter",), default="modcounter")
    p.add_argument("--sizes", default="64,128,256,512",
                   help="comma-separated n values (empty for none)")
    p.add_argument("--counts", default="2",
                   help="comma-separated member counts k")
    p.add_argument("--strategy", choices=STRATEGIES + ("both",), default="both")
    p.add_argument("--repeats", type=int, default=3)

    return parser


def _int_list(text):
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _print_run(run):
    for i, (config, choice) in enumerate(run.steps):
        line = (f"  step {i}: state={config.state} h0={config.input_head} "
                f"h1={config.work_head} tape={config.worktape}")
        if choice is not None:
            line += (f" -> (q'={choice.state} w={choice.write} "
                     f"m0={choice.move_input} m1={choice.move_work})")
        else:
            line += " [accepting]"
        print(line)


def _family_from_sidecar(instance, meta, base_dir):
    machine = parse_ntm((base_dir / meta["machine_file"]).read_text())
    construction = meta["construction"]
    input_bits = meta["input"]
    if construction == "kozen":
        parameter = int(meta["k"])
        space = int(meta["space_cells"])
        encoding = TraceEncoding.for_tuple6(machine.n_states)
    else:
        parameter = int(meta["space"])
        space = parameter
        encoding = TraceEncoding.for_tuple8(machine.n_states, len(input_bits), space)
    return CompiledFamily(instance=instance, encoding=encoding,
                          provenance=Provenance(machine.name, input_bits,
                                                construction, parameter),
                          machine=machine, input=input_bits, space_cells=space)


def cmd_solve(args):
    path = Path(args.instance)
    instance, _ = load_instance(path, strict=args.strict)
    cap = args.cap if args.cap is not None else DEFAULT_PRODUCT_CAP
    outcome = search_intersection(instance, args.strategy,
                                  step_cap=args.step_cap, cap=cap,
                                  engine=args.engine)
    print(f"instance: {path} k={instance.k} "
          f"states={[d.n_states for d in instance.dfas]} "
          f"bits={instance.encoded_bit_length}")
    if outcome.witness is None:
        print(f"EMPTY explored={outcome.states_explored}")
        return 1
    witness = outcome.witness
    print(f"NONEMPTY length={len(witness)} witness={witness.text} "
          f"explored={outcome.states_explored}")
    meta_path = path.with_suffix(".meta")
    if meta_path.exists():
        meta = parse_metadata(meta_path.read_text())
        if meta.get("construction") in ("kozen", "linear"):
            family = _family_from_sidecar(instance, meta, path.parent)
            run = decode_witness(family, witness)
            print(f"decoded run ({run.length} transitions):")
            _print_run(run)
    return 0


def _compile_common(args, family, block=None):
    machine_path = Path(args.machine)
    stem = f"{machine_path.stem}_{family.provenance.construction}"
    out_dir = Path(args.out) if args.out else machine_path.parent / stem
    int_path = save_instance(family.instance, out_dir, stem)
    machine_file = f"{stem}.ntm"
    (out_dir / machine_file).write_text(emit_ntm(family.machine))
    meta = {
        "machine": family.machine.name,
        "machine_file": machine_file,
        "input": family.input,
        "construction": family.provenance.construction,
    }
    if family.provenance.construction == "kozen":
        meta["k"] = family.provenance.parameter
        meta["block"] = block
    else:
        meta["space"] = family.provenance.parameter
    meta["space_cells"] = family.space_cells
    for name, width in family.encoding.fields:
        meta[f"width_{name}"] = width
    meta["tuple_bits"] = family.encoding.tuple_bits
    int_path.with_suffix(".meta").write_text(emit_metadata(meta))
    sizes = [d.n_states for d in family.instance.dfas]
    print(f"compiled {family.provenance.construction}: {len(sizes)} DFAs, "
          f"states={sizes}, tuple_bits={family.encoding.tuple_bits}")
    print(f"wrote {int_path}")
    return 0


def cmd_compile_kozen(args):
    machine = parse_ntm(Path(args.machine).read_text())
    family = compile_kozen(machine, args.input, args.blocks,
                           allow_stay=not args.no_stay)
    return _compile_common(args, family,
                           block=kozen_block_length(len(args.input)))


def cmd_compile_linear(args):
    machine = parse_ntm(Path(args.machine).read_text())
    family = compile_linear(machine, args.input, args.space,
                            allow_stay=not args.no_stay)
    return _compile_common(args, family)


def cmd_amplify(args):
    path = Path(args.instance)
    instance, _ = load_instance(path, strict=args.strict)
    cap = args.cap if args.cap is not None else DEFAULT_PRODUCT_CAP
    collapsed = amplify(instance, args.target, cap=cap)
    d = group_size(instance.k, args.target)
    padded = d * args.target - instance.k
    stem = f"{path.stem}_amp{args.target}"
    out_dir = Path(args.out) if args.out else path.parent / stem
    int_path = save_instance(collapsed, out_dir, stem)
    int_path.with_suffix(".meta").write_text(emit_metadata({
        "construction": "amplify",
        "source": path.name,
        "target_k": args.target,
        "group_size": d,
        "padded": padded,
    }))
    print(f"amplified {instance.k} -> {collapsed.k} DFAs "
          f"(group size {d}, padded {padded}), "
          f"states={[x.n_states for x in collapsed.dfas]}")
    print(f"wrote {int_path}")
    return 0


def cmd_simulate(args):
    machine = parse_ntm(Path(args.machine).read_text())
    cap = args.cap if args.cap is not None else DEFAULT_CONFIG_CAP
    if oracle_accepts(machine, args.input, args.space, cap=cap):
        run = find_accepting_run(machine, args.input, args.space, cap=cap)
        print(f"ACCEPT in {run.length} steps")
        _print_run(run)
        return 0
    print("REJECT")
    return 1


def cmd_savitch(args):
    machine = parse_ntm(Path(args.machine).read_text())
    cap = args.cap if args.cap is not None else DEFAULT_CONFIG_CAP
    if savitch_accepts(machine, args.input, args.space, args.budget, cap=cap):
        print(f"REACHABLE within {args.budget} steps")
        return 0
    print(f"UNREACHABLE within {args.budget} steps")
    return 1


def _inject_fault(family, kind):
    dfas = list(family.instance.dfas)
    ctrl = dfas[0]
    if kind == "always-final":
        finals = set(range(ctrl.n_states)) - set(ctrl.dead)
    else:
        finals = set()
    dfas[0] = Dfa(ctrl.alphabet, ctrl.transitions, ctrl.initial, finals,
                  name=ctrl.name)
    return replace(family, instance=IntersectionInstance(dfas))


def cmd_verify(args):
    rng = random.Random(args.seed)
    constructions = (("kozen", "linear") if args.construction == "both"
                     else (args.construction,))
    cap = args.cap if args.cap is not None else DEFAULT_CONFIG_CAP
    print(f"seed={args.seed} cases={args.count} "
          f"max_states={args.max_states} max_input_len={args.max_input_len} "
          f"max_space={args.max_space} engine={args.engine or default_engine()}")
    agree = {c: 0 for c in constructions}
    skipped = {c: 0 for c in constructions}
    disagreements = []
    for case in range(args.count):
        machine = random_machine(rng, max_states=args.max_states,
                                 name=f"m{case}")
        bits = random_input(rng, args.max_input_len)
        space = rng.randint(1, args.max_space)
        for construction in constructions:
            if construction == "kozen":
                family_space = kozen_block_length(len(bits))
                family = compile_kozen(machine, bits, 1)
            else:
                family_space = space
                family = compile_linear(machine, bits, space)
            try:
                expected = oracle_accepts(machine, bits, family_space, cap=cap)
            except StateSpaceTooLarge:
                skipped[construction] += 1
                continue
            if args.inject_fault != "none":
                family = _inject_fault(family, args.inject_fault)
            witness = search_intersection(family.instance,
                                          engine=args.engine).witness
            got = witness is not None
            detail = None
            if got and args.inject_fault == "none":
                try:
                    decode_witness(family, witness)
                except DfalabError as exc:
                    detail = f"witness decode failed: {exc}"
            if got != expected:
                detail = detail or (f"oracle={expected} family={got}")
            if detail is None:
                agree[construction] += 1
            else:
                disagreements.append(
                    f"case {case} ({construction}, machine={machine.name}, "
                    f"input={bits}, space={family_space}): {detail}")
    for construction in constructions:
        total = args.count - skipped[construction]
        print(f"{construction}: agree={agree[construction]}/{total} "
              f"skipped={skipped[construction]}")
    if disagreements:
        print("DISAGREEMENT")
        for line in disagreements:
            print(f"  {line}")
        return 1
    print("OK")
    return 0


def cmd_bench(args):
    sizes = _int_list(args.sizes)
    counts = _int_list(args.counts)
    strategies = (STRATEGIES if args.strategy == "both" else (args.strategy,))
    cap = args.cap if args.cap is not None else DEFAULT_PRODUCT_CAP
    rows = []
    for k in counts:
        for n in sizes:
            try:
                instance = modular_counter_instance(k, n)
            except DfalabError:
                for strategy in strategies:
                    rows.append(dict(construction=args.family, n=n, k_or_S=k,
                                     strategy=strategy, dfas=k, max_states="",
                                     product_states_explored="", time_ns="",
                                     verdict="skipped"))
                continue
            for strategy in strategies:
                try:
                    times = []
                    for _ in range(max(1, args.repeats)):
                        t0 = time.perf_counter_ns()
                        outcome = search_intersection(instance, strategy,
                                                      cap=cap,
                                                      engine=args.engine)
                        times.append(time.perf_counter_ns() - t0)
                except DfalabError:
                    rows.append(dict(construction=args.family, n=n, k_or_S=k,
                                     strategy=strategy, dfas=k, max_states="",
                                     product_states_explored="", time_ns="",
                                     verdict="skipped"))
                    continue
                rows.append(dict(
                    construction=args.family, n=n, k_or_S=k, strategy=strategy,
                    dfas=instance.k,
                    max_states=max(d.n_states for d in instance.dfas),
                    product_states_explored=outcome.states_explored,
                    time_ns=int(statistics.median(times)),
                    verdict="nonempty" if outcome.witness is not None else "empty"))
    text = bench_csv_text(rows)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "compile-kozen": cmd_compile_kozen,
    "compile-linear": cmd_compile_linear,
    "amplify": cmd_amplify,
    "simulate": cmd_simulate,
    "savitch": cmd_savitch,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DfalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
