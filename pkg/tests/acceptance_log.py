LINES: list[str] = []


def record(number: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {name}"
    if detail:
        line += f" ({detail})"
    LINES.append(line)
    print(line)
