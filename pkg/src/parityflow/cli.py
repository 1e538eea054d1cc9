"""``parityflow`` command line tool.

Exit codes: 0 on success, 1 when ``--fail-on-violation`` sees a disallowed
rotation, 2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .circuit import CircuitError, Timeline, parse_circuit, render_labels, track
from .stabilizer import render_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep the text short
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="parityflow", description="Track Pauli flow through Clifford circuits.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    t = sub.add_parser("track", help="report the logical meaning of every rotation")
    t.add_argument("file")
    t.add_argument("--json", action="store_true", help="dump the full timeline")
    t.add_argument("--fail-on-violation", action="store_true")

    lb = sub.add_parser("labels", help="print flow labels at a snapshot")
    lb.add_argument("file")
    lb.add_argument("--step", type=int, default=None, help="snapshot index (default: last)")

    tb = sub.add_parser("tableau", help="dump a tableau")
    tb.add_argument("file")
    tb.add_argument("--kind", choices=("flow", "clifford", "combined"), default="flow")
    tb.add_argument("--step", type=int, default=None, help="snapshot index (default: last)")
    tb.add_argument("--json", action="store_true")
    return p


def _load(path: str) -> Timeline:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return track(parse_circuit(text))


def _snapshot(tl: Timeline, step: int | None):
    if step is None:
        return tl.snapshots[-1].state
    if not 0 <= step < len(tl.snapshots):
        raise IndexError(f"step {step} out of range 0..{len(tl.snapshots) - 1}")
    return tl.snapshots[step].state


def _cmd_track(tl: Timeline, args) -> int:
    c = tl.circuit
    if args.json:
        print(tl.to_json())
    else:
        for e in tl.events:
            print(render_report(e.report, c.names, tl.marks, c.names[: c.n_logical]))
    if args.fail_on_violation and any(not r.allowed for r in tl.reports):
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_labels(tl: Timeline, args) -> int:
    print(render_labels(_snapshot(tl, args.step), tl.circuit.names, tl.marks))
    return EXIT_OK


def _cmd_tableau(tl: Timeline, args) -> int:
    ct = _snapshot(tl, args.step)
    if args.kind == "combined":
        if args.json:
            print(json.dumps(ct.to_dict()))
        else:
            print(ct.header())
            print(ct.flow.render())
        return EXIT_OK
    tab = ct.flow if args.kind == "flow" else ct.flow.invert()
    print(tab.to_json() if args.json else tab.render())
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        tl = _load(args.file)
        handler = {"track": _cmd_track, "labels": _cmd_labels, "tableau": _cmd_tableau}
        return handler[args.cmd](tl, args)
    except CircuitError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
    except (OSError, IndexError) as e:
        print(f"parityflow: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
