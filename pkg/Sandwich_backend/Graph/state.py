from typing import Dict, List, Literal, Optional, Tuple, TypedDict

from pydantic import BaseModel, ConfigDict, Field, field_validator

from Graph.config import ExplorationLimits
from Graph.explorer import ExplorationGraph, SandwichResult
from Graph.free_words import Alphabet, Word, WordSet
from Graph.whitehead import ReductionTrace

# ============================================================================
# 1. PYDANTIC MODELS (JSON INPUT / OUTPUT)
# ============================================================================

class WordSetModel(BaseModel):
    """{"generators": "xyz", "words": ["xxYY", "z"]}"""
    generators: str = Field(description="Generator symbols in index order")
    words: List[str] = Field(default=[], description="Words in the letter syntax")


class WhGraphModel(BaseModel):
    vertices: List[str] = Field(description="'1' for the basepoint, then E^±1 in letter order")
    edges: List[List[str]] = Field(description="Ordered pairs (ē_i, e_i+1)")


class CoreEdgeModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(alias="from", ge=0)
    label: str
    target: int = Field(alias="to", ge=0)


class CoreGraphModel(BaseModel):
    basepoint: int = Field(default=0, ge=0)
    vertices: int = Field(ge=1, description="Vertex count; vertices are 0..N-1")
    edges: List[CoreEdgeModel] = []


class CutModel(BaseModel):
    index: Optional[int] = Field(default=None, description="Position in enumerate_cuts order")
    e_star: str
    d_star: str
    eta: int
    d0: List[str]
    d1: List[str]
    phi: Dict[str, str] = Field(description="Generator images under φ_C")


class ReductionStepModel(BaseModel):
    cut_vertex: str
    case: int = Field(description="1 = connected graph, 2 = disconnected")
    cut: CutModel
    total_length: int


class ReductionReport(BaseModel):
    generators: str
    input: List[str]
    input_length: int
    steps: List[ReductionStepModel] = []
    phi: Dict[str, str]
    phi_inverse: Dict[str, str]
    final: List[str]
    final_length: int


class ClosureReport(BaseModel):
    generators: str
    input: List[str]
    basis: List[str]
    rank: int


class SubbasisReport(BaseModel):
    generators: str
    input: List[str]
    verdict: bool
    reason: str
    final: List[str]
    extended_basis: List[str] = []
    oracle_agrees: Optional[bool] = None


class BoundaryReport(BaseModel):
    generators: str
    input: List[str]
    cut: CutModel
    input_edges: int
    output_edges: int
    core: CoreGraphModel
    basis: List[str]


class NodeRecord(BaseModel):
    """One line of the exploration trace."""
    key: str
    edges: int
    loopCount: int
    parent: Optional[int] = None
    cut: Optional[int] = None
    depth: int = 0


class ExplorationSummary(BaseModel):
    node_count: int
    max_edges: int
    loop_histogram: Dict[int, int] = Field(default={}, description="loop count -> number of nodes")


class OracleReport(BaseModel):
    depth: int
    best_hits: int
    consistent: bool


class SandwichReport(BaseModel):
    generators: str
    input: List[str]
    upper_basis: List[str]
    upper_rank: int
    full_basis: List[str]
    lower_layer: List[str]
    best_count: int
    lower_count: int
    best_node: int
    node_count: int
    path: List[CutModel] = []
    exploration: Optional[ExplorationSummary] = None
    oracle: Optional[OracleReport] = None


# ============================================================================
# 2. CLI RUN CONFIGURATION
# ============================================================================

Command = Literal["graph", "reduce", "closure", "subbasis", "core", "boundary", "explore", "sandwich", "cuts"]


class RunConfig(BaseModel):
    generators: str
    words: List[str] = []
    command: Command
    node_budget: Optional[int] = Field(default=None, ge=1, description="None = FGS_NODE_BUDGET or the default")
    force_rank: bool = False
    output: Literal["json", "dot", "text"] = "json"
    explain: bool = False
    oracle: bool = False
    cut: int = Field(default=0, ge=0, description="Cut index for the boundary command")

    @field_validator("generators")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("generators must not be empty")
        return value.strip()


# ============================================================================
# 3. PIPELINE STATE
# ============================================================================

class SandwichState(TypedDict, total=False):
    word_set: WordSet
    alphabet: Alphabet
    limits: ExplorationLimits
    oracle_mode: bool

    closure_trace: ReductionTrace
    upper_basis: Tuple[Word, ...]
    exploration: ExplorationGraph
    best_index: int
    path_indices: Tuple[int, ...]
    result: SandwichResult
    oracle_report: Optional[OracleReport]
