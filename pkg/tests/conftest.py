from microhillary.verify import CheckResult

# criterion number -> (title, list of CheckResult), filled by test_acceptance.py
ACCEPTANCE = {}


def record(number, title, name, passed, detail=""):
    result = CheckResult(name, bool(passed), detail)
    ACCEPTANCE.setdefault(number, (title, []))[1].append(result)
    return result


def criterion_line(number):
    title, parts = ACCEPTANCE[number]
    ok = all(r.passed for r in parts)
    detail = "; ".join(f"{r.name}: {r.detail}" + ("" if r.passed else " (FAIL)") for r in parts)
    label = f"criterion {number:2d}" if isinstance(number, int) else number
    return f"{'PASS' if ok else 'FAIL'} {label} {title} | {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=lambda k: (isinstance(k, str), k)):
        terminalreporter.write_line(criterion_line(number))
