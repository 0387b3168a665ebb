"""Answer record returned by every end-vertex decider."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .graphs import VertexOrdering

if TYPE_CHECKING:  # pragma: no cover
    from .chordal import SeparatorChain


@dataclass
class EndVertexReport:
    """Decision plus optional witness ordering and separator-chain certificate.

    `algorithm` tags which decider produced the answer: chordal-mcs+,
    chordal-ldfs, chordal-mns, interval-bfs, exact-dp, or oracle.
    """

    decision: bool
    algorithm: str
    witness: Optional[VertexOrdering] = None
    certificate: Optional["SeparatorChain"] = None
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, labels: Optional[list[str]] = None) -> dict:
        def name(v: int):
            return labels[v] if labels is not None else v

        out: dict = {
            "decision": "yes" if self.decision else "no",
            "algorithm": self.algorithm,
            "witness": [name(v) for v in self.witness] if self.witness else None,
            "certificate": None,
            "timings": dict(self.timings),
        }
        if self.certificate is not None:
            out["certificate"] = {
                "separators": [
                    sorted(name(v) for v in s) for s in self.certificate.separators
                ],
                "edge_path": [list(e) for e in self.certificate.edge_path],
            }
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "EndVertexReport":
        """Inverse of to_dict for label-free (dense id) dictionaries."""
        from .chordal import SeparatorChain

        witness = None
        if d.get("witness") is not None:
            witness = VertexOrdering(int(v) for v in d["witness"])
        certificate = None
        if d.get("certificate") is not None:
            certificate = SeparatorChain(
                separators=tuple(
                    frozenset(int(v) for v in s)
                    for s in d["certificate"]["separators"]
                ),
                edge_path=tuple(
                    (int(e[0]), int(e[1])) for e in d["certificate"]["edge_path"]
                ),
            )
        return cls(
            decision=d["decision"] == "yes",
            algorithm=d["algorithm"],
            witness=witness,
            certificate=certificate,
            timings=dict(d.get("timings", {})),
        )
