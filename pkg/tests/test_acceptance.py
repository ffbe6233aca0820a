"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import pytest

from species_hopf.suites import SUITES, run_suite

CRITERIA = sorted(SUITES.values(), key=lambda s: s.criterion)


@pytest.mark.parametrize("suite", CRITERIA, ids=[f"criterion-{s.criterion}-{s.name}" for s in CRITERIA])
def test_criterion(suite, capsys):
    report = run_suite(suite.name)
    status = "PASS" if report.ok else "FAIL"
    with capsys.disabled():
        print(f"\n{status} criterion {suite.criterion} ({suite.name}): {suite.description} "
              f"[{report.checks} checks, {len(report.violations)} violations]")
    assert report.ok, "\n".join(report.lines()[:20])


def test_every_criterion_has_a_suite():
    assert [s.criterion for s in CRITERIA] == list(range(1, 11))
