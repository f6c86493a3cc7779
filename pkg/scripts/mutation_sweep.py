"""Flip the sign of every nonzero phi entry, xi, and every structure function of
the abstract kenmotsu5 frame, one at a time, and list which checks catch each
perturbation.

    python3 scripts/mutation_sweep.py
"""

from __future__ import annotations

from kenmotsu.dsl import builtin_source, parse_manifold_dsl
from kenmotsu.geometry import analyze


def abstract_source() -> str:
    lines = []
    for line in builtin_source("kenmotsu5").splitlines():
        if line.startswith("frame "):
            lines.append(line.split("=")[0].strip())
        elif line.startswith(("vector", "function", "soliton")):
            continue
        else:
            lines.append(line)
    lines += [f"bracket e{i} e5 = e{i}" for i in range(1, 5)]
    return "\n".join(lines) + "\n"


def mutations():
    src = builtin_source("kenmotsu5")
    for line in src.splitlines():
        if line.startswith("phi") and not line.endswith("0"):
            lhs, rhs = line.split("->")
            rhs = rhs.strip()
            flipped = rhs[1:] if rhs.startswith("-") else "-" + rhs
            yield line, src.replace(line, f"{lhs}-> {flipped}")
        elif line.startswith("frame") and "exp(-1*v)" in line:
            yield line, src.replace(line, line.replace("exp(-1*v)", "exp(1*v)"))
    yield "xi e5", src.replace("xi e5", "xi -e5")
    abstract = abstract_source()
    for i in range(1, 5):
        line = f"bracket e{i} e5 = e{i}"
        yield line, abstract.replace(line, f"bracket e{i} e5 = -e{i}")


def main() -> None:
    baseline = analyze(parse_manifold_dsl(abstract_source()).to_manifold())
    print(f"abstract frame baseline: {'all checks pass' if baseline.passed else 'FAILS'}")
    undetected = 0
    for original, text in mutations():
        geo = analyze(parse_manifold_dsl(text).to_manifold(strict=False))
        caught = [c for c in geo.all_checks() if not c.passed]
        undetected += not caught
        first = caught[0] if caught else None
        detail = (f"{len(caught)} failures, first {first.name} at ({', '.join(first.witness)})"
                  if first else "UNDETECTED")
        print(f"  flip {original:<28} -> {detail}")
    print(f"undetected mutations: {undetected}")


if __name__ == "__main__":
    main()
