"""On-disk cache of reduced Groebner bases, re-verified when loaded."""
from __future__ import annotations

import hashlib
import logging
import random
from pathlib import Path

from .groebner import (
    GroebnerBasis,
    IdealSpec,
    buchberger,
    ideal_contains,
    normal_form,
    parse_basis,
    s_polynomial,
    serialize_basis,
)
from .polyring import TermOrder, render

log = logging.getLogger(__name__)


def ideal_fingerprint(I: IdealSpec, order: TermOrder) -> str:
    h = hashlib.sha256()
    h.update(str(order).encode())
    h.update("|".join(I.ring.names).encode())
    for g in I.generators:
        h.update(render(g).encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


def spot_check(basis, order: TermOrder, pairs: int = 50, seed: int = 0) -> bool:
    """Reduce a random sample of S-polynomials (all of them if few) against the basis."""
    basis = list(basis)
    all_pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    rng = random.Random(seed)
    chosen = all_pairs if len(all_pairs) <= pairs else rng.sample(all_pairs, pairs)
    return all(normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()
               for i, j in chosen)


class GBCache:
    def __init__(self, directory: str | Path | None):
        self.directory = Path(directory) if directory else None
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, label: str, fp: str) -> Path:
        safe = "".join(c if c.isalnum() or c in "=-" else "_" for c in label)
        return self.directory / f"{safe}.{fp}.gb"

    def load(self, I: IdealSpec, order: TermOrder) -> GroebnerBasis | None:
        if not self.directory:
            return None
        path = self._path(I.label, ideal_fingerprint(I, order))
        if not path.exists():
            return None
        basis = tuple(parse_basis(path.read_text(), I.ring))
        gb = GroebnerBasis(order, basis, I, {"cached": True})
        if not basis and I.generators:
            return None
        if not spot_check(basis, order) or not ideal_contains(gb, I.generators):
            log.warning("discarding cached basis %s: verification failed", path.name)
            return None
        return gb

    def store(self, gb: GroebnerBasis) -> None:
        if not self.directory:
            return
        path = self._path(gb.source.label, ideal_fingerprint(gb.source, gb.order))
        path.write_text(serialize_basis(gb))

    def get(self, I: IdealSpec, order: TermOrder, budget_seconds: float | None = None) -> GroebnerBasis:
        gb = self.load(I, order)
        if gb is None:
            gb = buchberger(I, order, budget_seconds)
            self.store(gb)
        return gb
