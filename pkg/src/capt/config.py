"""Key-value config files: a small, strict TOML-style subset.

Supports comments, blank lines, [section] headers, quoted strings,
integers, floats, and booleans. Sections become nested dicts. Anything
else is a ConfigError with a line number; silent coercion would let a
typo change a run's meaning.
"""

from __future__ import annotations

import re

from capt.errors import ConfigError

_SECTION = re.compile(r"\[([A-Za-z0-9_.-]+)\]\Z")
_KEY = re.compile(r"[A-Za-z0-9_-]+\Z")
_INT = re.compile(r"[+-]?[0-9]+\Z")
_FLOAT = re.compile(r"[+-]?([0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)([eE][+-]?[0-9]+)?\Z")


def _unquote(raw: str, where: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == '"':
            raise ConfigError(f"{where}: stray quote inside string")
        if ch == "\\":
            if i + 1 >= len(body):
                raise ConfigError(f"{where}: dangling escape")
            nxt = body[i + 1]
            escapes = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}
            if nxt not in escapes:
                raise ConfigError(f"{where}: unknown escape \\{nxt}")
            out.append(escapes[nxt])
            i += 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def _parse_value(raw: str, where: str):
    if raw.startswith('"'):
        if len(raw) < 2 or not raw.endswith('"') or raw.endswith('\\"'):
            raise ConfigError(f"{where}: unterminated string")
        return _unquote(raw, where)
    if raw in ("true", "false"):
        return raw == "true"
    if _INT.fullmatch(raw):
        return int(raw)
    if _FLOAT.fullmatch(raw):
        return float(raw)
    raise ConfigError(
        f"{where}: cannot parse value {raw!r} (strings need double quotes)"
    )


def _strip_comment(line: str) -> str:
    out = []
    in_string = False
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == '"' and (i == 0 or line[i - 1] != "\\"):
            in_string = not in_string
        if ch == "#" and not in_string:
            break
        out.append(ch)
        i += 1
    return "".join(out).strip()


def parse_config_text(text: str, origin: str = "<config>") -> dict:
    result: dict = {}
    section: dict = result
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        where = f"{origin}:{lineno}"
        line = _strip_comment(raw_line)
        if not line:
            continue
        match = _SECTION.fullmatch(line)
        if match:
            section = result
            for part in match.group(1).split("."):
                section = section.setdefault(part, {})
                if not isinstance(section, dict):
                    raise ConfigError(f"{where}: section name collides with a key")
            continue
        if "=" not in line:
            raise ConfigError(f"{where}: expected key = value")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if not _KEY.fullmatch(key):
            raise ConfigError(f"{where}: bad key {key!r}")
        if not raw_value:
            raise ConfigError(f"{where}: missing value for {key!r}")
        if key in section:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        section[key] = _parse_value(raw_value, where)
    return result


def parse_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read(), origin=path)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
