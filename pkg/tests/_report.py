"""Pass/fail lines collected from the acceptance module."""

LINES = []


def record(number, name, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    LINES.append(line)
    print(line)
    return line
