from .commands import build_parser, execute, run
from .main import main
from .objects import Workspace
from .parser import parse, parse_text
from .report import Report, emit, read_report

__all__ = ["Report", "Workspace", "build_parser", "emit", "execute", "main", "parse",
           "parse_text", "read_report", "run"]
