import re


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one verdict line per acceptance criterion at the end of a run."""
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)",
                          getattr(rep, "nodeid", ""))
            if m:
                crit = int(m.group(1))
                outcomes[crit] = outcomes.get(crit, True) and key == "passed"
    if outcomes:
        terminalreporter.write_sep("-", "acceptance criteria")
        for crit in sorted(outcomes):
            verdict = "PASS" if outcomes[crit] else "FAIL"
            terminalreporter.write_line(f"criterion {crit:2d}: {verdict}")
