import hashlib
import logging

from rich.console import Console
from rich.logging import RichHandler

logger = logging.getLogger("rich")


def fingerprint(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split *text* at *sep* characters that are not nested in brackets."""
    parts, depth, current = [], 0, []
    for char in text:
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
        if char == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


class _ColoredFormatter(logging.Formatter):
    FORMAT = {
        "DEBUG": "dim",
        "INFO": "blue",
        "WARNING": "yellow",
        "ERROR": "red",
        "CRITICAL": "bold red",
    }

    def format(self, record: logging.LogRecord) -> str:
        color = self.FORMAT.get(record.levelname, "magenta")
        prefix = f"[{color}]{record.levelname[0]} :"
        return f"{prefix} {record.getMessage()}[/]"


def setup_logging(level: str) -> None:
    # stdout carries command output
    handler = RichHandler(
        console=Console(stderr=True),
        show_time=False,
        show_path=False,
        show_level=False,
        markup=True,
    )
    handler.formatter = _ColoredFormatter()
    handler.highlighter = None  # pyright: ignore[reportAttributeAccessIssue]
    logger.setLevel(level)
    logging.basicConfig(handlers=[handler])
