"""Deterministic pretty-printer for ludeme trees.

The output re-tokenizes and re-parses to a tree structurally equal to the
input. Nodes render inline while they fit in the line width, otherwise one
argument per line with two-space indentation, which matches how published
game descriptions are usually laid out.
"""

from __future__ import annotations

from .parser import Ident, LudemeNode, Value

# Binary capacity of the largest QR code (version 40, level L); a whole
# game description should fit in one code.
QR_BYTE_LIMIT = 2953

_WIDTH = 72


def _atom(value: Value) -> str:
    if isinstance(value, bool):
        raise ValueError("booleans are not ludeme values")
    if isinstance(value, int):
        if value < 0:
            raise ValueError(f"cannot format negative integer {value}")
        return str(value)
    if isinstance(value, str):
        if '"' in value or "\n" in value:
            raise ValueError(f"cannot format string {value!r}")
        return f'"{value}"'
    if isinstance(value, Ident):
        return value.name
    raise ValueError(f"not an atom: {value!r}")


def _inline(value: Value) -> str:
    if isinstance(value, LudemeNode):
        parts = [value.name]
        parts += [_inline(a) for a in value.args]
        parts += [f"{k}:{_inline(v)}" for k, v in value.named]
        return "(" + " ".join(parts) + ")"
    if isinstance(value, tuple):
        inner = " ".join(_inline(v) for v in value)
        return "{" + inner + "}" if inner else "{}"
    return _atom(value)


def _render(value: Value, indent: int, out: list[str]) -> None:
    flat = _inline(value)
    if indent + len(flat) <= _WIDTH or not isinstance(value, (LudemeNode, tuple)):
        out.append(" " * indent + flat)
        return
    pad = " " * indent
    if isinstance(value, tuple):
        out.append(pad + "{")
        for item in value:
            _render(item, indent + 2, out)
        out.append(pad + "}")
        return
    head = "(" + value.name
    for k, v in value.named:
        head += f" {k}:{_inline(v)}"
    out.append(pad + head)
    for arg in value.args:
        _render(arg, indent + 2, out)
    out.append(pad + ")")


def format_tree(root: LudemeNode) -> str:
    """Render a tree back to `.lud` source text (UTF-8, trailing newline)."""
    out: list[str] = []
    _render(root, 0, out)
    return "\n".join(out) + "\n"


def formatted_size(root: LudemeNode) -> int:
    """Byte length of the canonical formatting, as checked by the QR lint."""
    return len(format_tree(root).encode("utf-8"))


def fits_qr(root: LudemeNode) -> bool:
    return formatted_size(root) <= QR_BYTE_LIMIT
