"""Check the Harder congruence at r = 32 modulo 211 and print the report."""

from vvsmf.verify import DEFAULT_P_DELTA, Workspace, emit_report, verify_harder

ws = Workspace(324, 81)
report = verify_harder(32, DEFAULT_P_DELTA, 211, ws)
print(emit_report(report))
