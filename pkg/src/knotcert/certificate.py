"""Certificate record shared by the family and obstruction layers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDABLE = "undecidable"


# stable identifiers of the results a certificate instantiates
THM_MAIN = "Thm-main"
THM_INDEPENDENCE = "Thm-independence"
THM_MEMBERSHIP = "Thm-KnliesinQplusone"
LEMMA_TSTAR = "Lemma-t-star"
PROP_ORDER_TWO = "Prop-Knisorder2"
PROP_IRREDUCIBLE = "Prop-alexpolyscoprime"


@dataclass(frozen=True)
class Certificate:
    """``kind``/``verdict`` plus a JSON-ready ``evidence`` payload.

    ``evidence`` must already be built from JSON types (strings for exact
    values); ``to_json`` does not coerce.
    """

    kind: str
    verdict: Verdict
    evidence: dict
    citations: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict.value,
            "evidence": self.evidence,
            "citations": list(self.citations),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def combine(verdicts) -> Verdict:
    """fail dominates undecidable, which dominates pass."""
    vs = list(verdicts)
    if Verdict.FAIL in vs:
        return Verdict.FAIL
    if Verdict.UNDECIDABLE in vs:
        return Verdict.UNDECIDABLE
    return Verdict.PASS
