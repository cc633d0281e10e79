import sys

from .commands import build_parser, execute
from .report import emit


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        build_parser().print_help(sys.stderr)
        return 2
    report, ns = execute(argv)
    fmt = ns.format if ns is not None else ("json" if "json" in argv else "text")
    quiet = ns.quiet if ns is not None else "--quiet" in argv
    sys.stdout.write(emit(report, fmt, quiet))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
