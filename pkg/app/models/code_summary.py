from typing import Dict, List, Optional

from pydantic import BaseModel

from app.models.quantum_params import QuantumParams


class CodeSummary(BaseModel):
    n: int
    k: int
    q: int
    designed_d: Optional[int] = None
    designed_dual_d: Optional[int] = None
    exact_d: Optional[int] = None
    provenance: Dict[str, object]
    generator: Optional[List[List[int]]] = None


class CertificationResult(BaseModel):
    """Bracket on a minimum distance; ``exact`` when both ends meet. None stands for no codeword."""

    lower: Optional[int] = None
    upper: Optional[int] = None
    exact: bool
    method: str
    designed_d: Optional[int] = None


class ExpansionSummary(BaseModel):
    code: CodeSummary
    basis: List[str]
    dual_basis: List[str]
    duality_holds: bool


class CssSummary(BaseModel):
    params: QuantumParams
    convention: str = "X rows generate C1, Z rows generate the dual of C2"
    hx: Optional[List[List[int]]] = None
    hz: Optional[List[List[int]]] = None
