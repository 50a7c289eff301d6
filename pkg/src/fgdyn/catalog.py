"""Semigroup generator catalogs.

One catalog file per family, plain text.  Sections:

    [meta]                         family/anchor/kexp/general-condition/count
    [conjugator]                   delta = <word>, optional `if <cond>` forms
    [seed]                         seed word for discovery
    [core]                         named words, `if <cond>` variants allowed
    [tail k=<lo>..<hi>]            parameterized entries, one per k in range
    [finite m=<v> n=<v>]           explicit generator list for one pair

Words use the standard token grammar with `{...}` index arithmetic over the
variables m, n, k (e.g. `a{k+1}`, `-c{m}`).  Entry names may carry the same
placeholders.  Conditions are python expressions in m and n.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .words import Family, Letter, RankContext, Word, WordError, word_from_letters
from .actions import FamilyKind, family_of

DEFAULT_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
ENV_CATALOG_DIR = "FGDYN_CATALOG_DIR"


class CatalogError(ValueError):
    pass


class UncoveredParameters(CatalogError):
    """The catalog has neither a general window nor finite data for (m, n)."""


_TOKEN_RE = re.compile(r"(-?)([abc])\{?([0-9a-zA-Z+\-* ()]+?)\}?$")


def _eval_expr(expr: str, env: dict[str, int]) -> int:
    try:
        val = eval(expr.replace("{", "").replace("}", ""), {"__builtins__": {}}, dict(env))
    except Exception as exc:
        raise CatalogError(f"bad index expression {expr!r}: {exc}") from None
    if not isinstance(val, int):
        raise CatalogError(f"index expression {expr!r} is not an integer")
    return val


def _eval_cond(cond: str, env: dict[str, int]) -> bool:
    try:
        return bool(eval(cond, {"__builtins__": {}}, dict(env)))
    except Exception as exc:
        raise CatalogError(f"bad condition {cond!r}: {exc}") from None


def instantiate_name(template: str, env: dict[str, int]) -> str:
    def sub(mt):
        return str(_eval_expr(mt.group(1), env))

    return re.sub(r"\{([^{}]+)\}", sub, template)


def instantiate_word(template: str, env: dict[str, int]) -> Word:
    letters = []
    for tok in template.split():
        mt = _TOKEN_RE.match(tok)
        if not mt:
            raise CatalogError(f"bad word token {tok!r}")
        sign = -1 if mt.group(1) else 1
        fam = {"a": Family.A, "b": Family.B, "c": Family.C}[mt.group(2)]
        idx = _eval_expr(mt.group(3), env)
        letters.append(Letter(fam, idx, sign))
    return word_from_letters(letters)


@dataclass
class Section:
    kind: str                      # meta | conjugator | seed | core | tail | finite
    cond: str | None = None        # include only when condition holds
    krange: tuple[str, str] | None = None
    params: dict[str, int] = field(default_factory=dict)
    entries: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class GeneratorCatalog:
    family: FamilyKind
    anchor: str                    # "start-a1" or "end-c1"
    kexp: int
    general_cond: str
    sections: list[Section]
    path: str

    def covers_generally(self, m: int, n: int) -> bool:
        return _eval_cond(self.general_cond, {"m": m, "n": n})

    def finite_section(self, m: int, n: int) -> Section | None:
        for s in self.sections:
            if s.kind == "finite" and s.params.get("m") == m and s.params.get("n") == n:
                return s
        return None

    def covers(self, m: int, n: int) -> bool:
        return self.covers_generally(m, n) or self.finite_section(m, n) is not None

    def generators(self, m: int, n: int) -> list[tuple[str, Word]]:
        """Instantiated (name, word) list in catalog order."""
        env = {"m": m, "n": n}
        fin = self.finite_section(m, n)
        if fin is not None:
            return [
                (instantiate_name(nm, env), instantiate_word(tx, env))
                for nm, tx in fin.entries
                if nm not in ("conjugator", "seed")
            ]
        if not self.covers_generally(m, n):
            raise UncoveredParameters(
                f"catalog {self.family.value} covers neither general window nor finite ({m}, {n})"
            )
        out: list[tuple[str, Word]] = []
        for s in self.sections:
            if s.kind == "core":
                if s.cond and not _eval_cond(s.cond, env):
                    continue
                for nm, tx in s.entries:
                    out.append((instantiate_name(nm, env), instantiate_word(tx, env)))
            elif s.kind == "tail":
                if s.cond and not _eval_cond(s.cond, env):
                    continue
                lo = _eval_expr(s.krange[0], env)
                hi = _eval_expr(s.krange[1], env)
                for k in range(lo, hi + 1):
                    kenv = dict(env, k=k)
                    for nm, tx in s.entries:
                        out.append((instantiate_name(nm, kenv), instantiate_word(tx, kenv)))
        names = [nm for nm, _ in out]
        if len(set(names)) != len(names):
            dup = sorted({x for x in names if names.count(x) > 1})
            raise CatalogError(f"duplicate generator names {dup} at ({m}, {n})")
        return out

    def conjugator(self, m: int, n: int) -> Word | None:
        env = {"m": m, "n": n}
        fin = self.finite_section(m, n)
        if fin is not None:
            for nm, tx in fin.entries:
                if nm == "conjugator":
                    return instantiate_word(tx, env)
        chosen = None
        for s in self.sections:
            if s.kind != "conjugator":
                continue
            if s.cond is None and chosen is None:
                chosen = s
            elif s.cond is not None and _eval_cond(s.cond, env):
                chosen = s
        if chosen is None:
            return None
        for nm, tx in chosen.entries:
            if nm == "delta":
                return instantiate_word(tx, env)
        return None

    def seed(self, m: int, n: int) -> Word | None:
        env = {"m": m, "n": n}
        chosen = None
        for s in self.sections:
            if s.kind != "seed":
                continue
            if s.cond is None and chosen is None:
                chosen = s
            elif s.cond is not None and _eval_cond(s.cond, env):
                chosen = s
        if chosen is None:
            return None
        for nm, tx in chosen.entries:
            if nm == "seed":
                return instantiate_word(tx, env)
        return None


_HEADER_RE = re.compile(r"^\[(\w+)(.*)\]$")


def parse_catalog(text: str, path: str = "<memory>") -> GeneratorCatalog:
    sections: list[Section] = []
    meta: dict[str, str] = {}
    current: Section | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        mt = _HEADER_RE.match(line)
        if mt:
            kind, rest = mt.group(1), mt.group(2).strip()
            sec = Section(kind=kind)
            if kind == "tail":
                km = re.match(r"k=(\S+)\.\.(\S+?)(?:\s+if\s+(.*))?$", rest)
                if not km:
                    raise CatalogError(f"{path}:{lineno}: bad tail header {raw!r}")
                sec.krange = (km.group(1), km.group(2))
                sec.cond = km.group(3)
            elif kind == "finite":
                fm = re.match(r"m=(\d+)\s+n=(\d+)$", rest)
                if not fm:
                    raise CatalogError(f"{path}:{lineno}: bad finite header {raw!r}")
                sec.params = {"m": int(fm.group(1)), "n": int(fm.group(2))}
            else:
                cm = re.match(r"^(?:if\s+(.*))?$", rest)
                if cm is None:
                    raise CatalogError(f"{path}:{lineno}: bad section header {raw!r}")
                sec.cond = cm.group(1)
            sections.append(sec)
            current = sec
            continue
        if "=" not in line or current is None:
            raise CatalogError(f"{path}:{lineno}: stray line {raw!r}")
        name, val = (x.strip() for x in line.split("=", 1))
        if current.kind == "meta":
            meta[name] = val
        else:
            current.entries.append((name, val))
    for key in ("family", "anchor", "kexp", "general"):
        if key not in meta:
            raise CatalogError(f"{path}: missing meta key {key!r}")
    return GeneratorCatalog(
        family=FamilyKind(meta["family"]),
        anchor=meta["anchor"],
        kexp=int(meta["kexp"]),
        general_cond=meta["general"],
        sections=[s for s in sections if s.kind != "meta"],
        path=path,
    )


def catalog_dir(override: str | None = None) -> str:
    return override or os.environ.get(ENV_CATALOG_DIR) or DEFAULT_DATA_DIR


def load_catalog(kind: FamilyKind, directory: str | None = None) -> GeneratorCatalog:
    path = os.path.join(catalog_dir(directory), f"{kind.value}.cat")
    if not os.path.exists(path):
        raise CatalogError(f"no catalog file for family {kind.value} at {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read(), path)


def catalog_for(m: int, n: int, directory: str | None = None) -> GeneratorCatalog:
    return load_catalog(family_of(m, n), directory)
