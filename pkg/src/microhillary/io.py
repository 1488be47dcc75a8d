"""Text formats for macro sets, problems and learning reports.

Macro file::

    # domain npuzzle param 4
    lur
    ruuld

Problem file::

    domain npuzzle param 4
    <initial state>
    <goal state>

Both headers may carry extra ``key value`` pairs (for example
``heuristic rr``).  A report is one ``key: value`` pair per line.
"""
from __future__ import annotations

from pathlib import Path

from .core import Domain, MacroSet, Problem, format_macro, macro_from_names


class FormatError(ValueError):
    pass


def _header_fields(tokens, line_no=1) -> dict:
    if len(tokens) % 2:
        raise FormatError(f"line {line_no}: header needs key/value pairs, got {' '.join(tokens)!r}")
    fields = dict(zip(tokens[::2], tokens[1::2]))
    if "domain" not in fields:
        raise FormatError(f"line {line_no}: header lacks a domain")
    if "param" in fields:
        try:
            fields["param"] = int(fields["param"])
        except ValueError:
            raise FormatError(f"line {line_no}: param must be an integer") from None
    return fields


def _header_text(fields: dict) -> str:
    return " ".join(f"{k} {v}" for k, v in fields.items() if v is not None)


def format_macro_file(domain: Domain, macros, **extra) -> str:
    header = {"domain": domain.name, "param": domain.parameter, **extra}
    lines = ["# " + _header_text(header)]
    lines += [format_macro(domain, m) for m in macros]
    return "\n".join(lines) + "\n"


def parse_macro_header(text: str) -> dict:
    first = text.splitlines()[0] if text else ""
    if not first.startswith("#"):
        raise FormatError("macro file must start with '# domain <name> param <k>'")
    return _header_fields(first[1:].split())


def parse_macro_file(text: str, domain: Domain) -> MacroSet:
    parse_macro_header(text)
    macros = MacroSet()
    for line in text.splitlines()[1:]:
        line = line.strip()
        if line and not line.startswith("#"):
            macros.add(macro_from_names(domain, line))
    return macros


def write_macro_file(path, domain: Domain, macros, **extra) -> None:
    Path(path).write_text(format_macro_file(domain, macros, **extra), encoding="utf-8")


def read_macro_file(path, domain: Domain) -> MacroSet:
    return parse_macro_file(Path(path).read_text(encoding="utf-8"), domain)


def format_problem(domain: Domain, problem: Problem, **extra) -> str:
    header = {"domain": domain.name, "param": domain.parameter, **extra}
    return "\n".join([_header_text(header), domain.format_state(problem.initial),
                      domain.format_state(problem.goal)]) + "\n"


def parse_problem_header(text: str) -> dict:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty problem file")
    return _header_fields(lines[0].split())


def parse_problem(text: str, domain: Domain) -> Problem:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 3:
        raise FormatError("problem file needs a header, an initial state and a goal state")
    _header_fields(lines[0].split())
    if domain.parse_state is None:
        raise FormatError(f"domain {domain.name!r} has no state parser")
    try:
        return Problem(domain.parse_state(lines[1]), domain.parse_state(lines[2]))
    except (ValueError, KeyError) as exc:
        raise FormatError(f"bad state: {exc}") from None


def format_report(report, **extra) -> str:
    """Key-value record of a learning run."""
    lengths = report.macro_set.lengths()
    fields = dict(extra)
    fields.update(
        quiesced=report.quiesced,
        problems_solved=report.problems_solved,
        macros=len(lengths),
        mean_macro_length=round(sum(lengths) / len(lengths), 4) if lengths else 0,
        max_macro_length=max(lengths, default=0),
        total_operator_applications=report.total_operator_applications,
        generation_operator_applications=report.generation_operator_applications,
        search_operator_applications=report.search_operator_applications,
        escapes=report.stats.escapes,
        wall_time=round(report.wall_time, 3),
    )
    if report.per_parameter:
        fields["per_parameter"] = ",".join(f"{p}:{k}" for p, k in report.per_parameter)
    for i, m in enumerate(report.macro_set):
        prov = m.acquired_at
        if prov is not None:
            fields[f"macro_{i}"] = f"problem={prov.problem_index} h={prov.h_before}->{prov.h_after}"
    return "".join(f"{k}: {v}\n" for k, v in fields.items())


def parse_report(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if ":" in line:
            k, v = line.split(":", 1)
            out[k.strip()] = v.strip()
    return out
