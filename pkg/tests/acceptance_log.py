"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

from contextlib import contextmanager

RESULTS = {}


@contextmanager
def criterion(key, label):
    try:
        yield
    except BaseException as exc:
        RESULTS[key] = (False, label, f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        print(f"FAIL  [{key}] {label}")
        raise
    RESULTS[key] = (True, label, "")
    print(f"PASS  [{key}] {label}")


def summary_lines():
    out = []
    for key in sorted(RESULTS, key=_sort_key):
        ok, label, detail = RESULTS[key]
        line = f"{'PASS' if ok else 'FAIL'}  [{key}] {label}"
        if detail:
            line += f"  ({detail})"
        out.append(line)
    return out


def _sort_key(key):
    head = "".join(c for c in key if c.isdigit())
    return (int(head) if head else 0, key)
