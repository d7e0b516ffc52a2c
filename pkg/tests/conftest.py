def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import SUMMARY_LINES
    except ImportError:
        return
    if not SUMMARY_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in SUMMARY_LINES:
        terminalreporter.write_line(line)
