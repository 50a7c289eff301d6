"""Regenerate [finite] catalog sections by discovery, then verify each."""
import sys
sys.path.insert(0, "src")
from fgdyn.actions import FamilyKind, build_action, family_of, period_k
from fgdyn.catalog import load_catalog
from fgdyn.semigroup import (
    discover_generators, extract_conjugator, verify_invariance, Semigroup,
)
from fgdyn.words import parse_word, format_word


def finite_section(m, n, seed=None, conj_hint=None):
    sem = discover_generators(m, n, seed=seed)
    e = build_action(m, n)
    k = period_k(m, n)
    delta = extract_conjugator(e, k, sem, hint=conj_hint)
    lines = [f"[finite m={m} n={n}]"]
    lines.append(f"conjugator = {format_word(delta)}")
    for nm, w in sem.generators:
        lines.append(f"{nm} = {format_word(w)}")
    return "\n".join(lines) + "\n"


def run(family_file, cases):
    out = []
    for case in cases:
        m, n = case[0], case[1]
        seed = parse_word(case[2]) if len(case) > 2 and case[2] else None
        hint = parse_word(case[3]) if len(case) > 3 and case[3] else None
        sec = finite_section(m, n, seed=seed, conj_hint=hint)
        out.append(sec)
        print(f"  ({m},{n}): {sec.count(chr(10)) - 2} generators")
    with open(family_file, "a") as fh:
        fh.write("\n" + "\n".join(out))
