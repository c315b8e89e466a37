"""Regenerate the family files under src/fqplab/data.

The worked-example fixtures live in paper.ring and are written by hand; everything
else is produced here so the families stay consistent.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from fqplab.ideals import maximal_ideal, minimal_generators
from fqplab.rings import is_prime, local_factors
from fqplab.specparse import build_ring, parse_spec_line

DATA = Path(__file__).resolve().parents[1] / "src" / "fqplab" / "data"
TRIVEXT_BASE_MAX = 16
TRIVEXT_RESULT_MAX = 128


def prime_power(n: int) -> bool:
    return n > 1 and sum(1 for p in range(2, n + 1) if n % p == 0 and is_prime(p)) == 1


def zmod_lines():
    out = ["@tags family zmod"]
    for n in range(1, 65):
        exp = ["arithmetical=true", f"chained={'true' if n == 1 or prime_power(n) else 'false'}"]
        out.append(f"zmod{n}: Z({n}) expect{{{', '.join(exp)}}}")
    return out


def truncation_lines():
    out = ["@tags family truncation"]
    for p in (2, 3):
        for k in (1, 2, 3):
            xs = [f"x{i}" for i in range(1, k + 1)]
            monos = [a if a == b else f"{a}*{b}" for a, b in itertools.combinations_with_replacement(xs, 2)]
            monos = [m if "*" in m else f"{m}^2" for m in monos]
            arith = "true" if k == 1 else "false"
            out.append(f"trunc-p{p}-k{k}: Poly({p},[{','.join(xs)}],[{','.join(monos)}]) "
                       f"expect{{fqp=true, arithmetical={arith}}}")
    return out


def local_bases(entries):
    for name, spec in entries:
        R = build_ring(spec)
        if R.size <= TRIVEXT_BASE_MAX and len(local_factors(R).factors) == 1:
            yield name, spec, R


def residue_generators(spec: str, R) -> str:
    head = spec.split("(", 1)[0]
    if head == "Z":
        return str(R.size if is_prime(R.size) else next(p for p in range(2, R.size + 1) if R.size % p == 0))
    if head == "Poly":
        return spec.split("[", 1)[1].split("]", 1)[0]
    return ",".join(str(g) for g in minimal_generators(R, maximal_ideal(R)))


def trivext_lines(entries):
    out = ["@tags family trivext"]
    for name, spec, A in local_bases(entries):
        m = maximal_ideal(A)
        res = A.size // m.size
        gens = residue_generators(spec, A)
        for j in (1, 2):
            if A.size * res ** j <= TRIVEXT_RESULT_MAX:
                out.append(f"te-{name}-j{j}: TrivExt({spec},[{gens}],{j})")
    return out


PRODUCT_FACTORS = [("z2", "Z(2)"), ("z3", "Z(3)"), ("z4", "Z(4)"), ("d2", "Poly(2,[x],[x^2])"),
                   ("ex3.2", "Poly(2,[x,y],[x^2,x*y,y^2])"), ("ex4.6", "TrivExt(Z(4),[2],1)"),
                   ("z8", "Z(8)")]


def product_lines():
    out = ["@tags family product"]
    for (na, a), (nb, b) in itertools.combinations_with_replacement(PRODUCT_FACTORS, 2):
        out.append(f"prod-{na}-{nb}: Prod({a},{b})")
    return out


def read_entries(path: Path):
    for line in path.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith(("#", "@")):
            e = parse_spec_line(line)
            yield e.name, line.split(":", 1)[1].split("expect")[0].strip()


def main():
    header = "# generated by scripts/gen_corpus.py; edit the script, not this file"
    files = {"zmod.ring": zmod_lines(), "truncations.ring": truncation_lines()}
    for fname, lines in files.items():
        (DATA / fname).write_text("\n".join([header, *lines]) + "\n")
    bases = []
    for fname in ("paper.ring", "zmod.ring", "truncations.ring"):
        bases.extend(read_entries(DATA / fname))
    (DATA / "trivext.ring").write_text("\n".join([header, *trivext_lines(bases)]) + "\n")
    (DATA / "products.ring").write_text("\n".join([header, *product_lines()]) + "\n")


if __name__ == "__main__":
    main()
