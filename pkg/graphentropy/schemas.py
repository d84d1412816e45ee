import math
from enum import Enum, IntEnum
from typing import Annotated, ClassVar, Generic, List, Literal, Optional, Tuple, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .conf import get_setting
from .exceptions import DomainError

T = TypeVar('T')

RngSeed = Annotated[int, Field(ge=0, lt=2 ** 64)]


class ExitCode(IntEnum):
    OK = 0
    PROPERTY_VIOLATION = 1
    USAGE_ERROR = 2
    NUMERIC_FAILURE = 3


class CommandResult(BaseModel, Generic[T]):
    data: Optional[T] = None
    exit_code: ExitCode = ExitCode.OK
    success: bool = True
    message: str


class MatrixKind(str, Enum):
    ADJACENCY = 'adj'
    LAPLACIAN = 'lap'
    NORMALIZED_LAPLACIAN = 'nlap'


# Graph core

class Graph(BaseModel):
    """Simple undirected graph: vertex count plus canonical (min, max) edge set"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    edges: frozenset[Tuple[int, int]] = frozenset()

    @model_validator(mode='after')
    def _check_canonical(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}")
            if not 0 <= u < v < self.n:
                raise ValueError(f"Edge ({u}, {v}) is not canonical for n={self.n}")
        return self

    @classmethod
    def from_canonical(cls, n: int, edges) -> 'Graph':
        """Build without validation; callers guarantee canonical simple edges"""
        return cls.model_construct(n=n, edges=frozenset(edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int array in ascending (u, v) order"""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        arr = np.array(list(self.edges), dtype=np.int64)
        return arr[np.lexsort((arr[:, 1], arr[:, 0]))]


class ComponentLabeling(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: Tuple[int, ...]
    count: int = Field(ge=0)

    def members(self, component: int) -> List[int]:
        return [v for v, lab in enumerate(self.label) if lab == component]


# Matrices and spectra

def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class SymMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: MatrixKind
    entries: np.ndarray

    @field_validator('entries', mode='before')
    @classmethod
    def _check_symmetric(cls, value):
        arr = np.array(value, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"Matrix must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Matrix entries must be finite")
        if not np.array_equal(arr, arr.T):
            raise ValueError("Matrix is not symmetric")
        return _readonly(arr)

    @property
    def order(self) -> int:
        return self.entries.shape[0]


class Spectrum(BaseModel):
    """Real eigenvalues sorted descending (lambda_1 >= ... >= lambda_n)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray

    @field_validator('values', mode='before')
    @classmethod
    def _sort_descending(cls, value):
        arr = np.array(value, dtype=np.float64).reshape(-1)
        return _readonly(np.sort(arr)[::-1].copy())

    @classmethod
    def from_values(cls, values) -> 'Spectrum':
        return cls(values=values)

    def __len__(self) -> int:
        return self.values.shape[0]


# Entropy

class GibbsEntropyResult(BaseModel):
    """Entropy and its decomposition; log_partition and trace_term are post-shift"""
    model_config = ConfigDict(frozen=True)

    tau: float
    entropy: float
    log_partition: float
    trace_term: float


class TauGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: Tuple[float, ...]

    @field_validator('points')
    @classmethod
    def _check_increasing(cls, points):
        if not points:
            raise ValueError("Tau grid must contain at least one point")
        if any(not math.isfinite(t) for t in points):
            raise ValueError("Tau grid points must be finite")
        if points[0] < 0:
            raise ValueError("Tau grid points must be non-negative")
        if any(b <= a for a, b in zip(points, points[1:])):
            raise ValueError("Tau grid points must be strictly increasing")
        return points

    @classmethod
    def build(cls, tau_min: float, tau_max: float, count: int, log_spaced: bool = True) -> 'TauGrid':
        if count < 1:
            raise DomainError("Tau grid needs count >= 1")
        if count == 1:
            return cls(points=(float(tau_min),))
        if tau_max <= tau_min:
            raise DomainError("tau_max must exceed tau_min")
        if log_spaced:
            if tau_min <= 0:
                raise DomainError("Log-spaced grids need tau_min > 0")
            points = np.geomspace(tau_min, tau_max, count)
        else:
            points = np.linspace(tau_min, tau_max, count)
        return cls(points=tuple(float(t) for t in points))

    @classmethod
    def default(cls) -> 'TauGrid':
        return cls.build(
            get_setting('TAU_MIN'),
            get_setting('TAU_MAX'),
            get_setting('TAU_POINTS'),
            get_setting('TAU_LOG'),
        )

    def __len__(self) -> int:
        return len(self.points)


class CurveSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    tau: float
    entropy: float
    normalized_entropy: float


class EntropyCurve(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: MatrixKind
    n: int = Field(ge=0)
    samples: List[CurveSample]
    ensemble_size: int = Field(default=1, ge=1)

    def taus(self) -> np.ndarray:
        return np.array([s.tau for s in self.samples])

    def entropies(self) -> np.ndarray:
        return np.array([s.entropy for s in self.samples])

    def normalized(self) -> np.ndarray:
        return np.array([s.normalized_entropy for s in self.samples])


class Regime(str, Enum):
    HIGH_ENTROPY = 'high_entropy'
    BOUNDARY = 'boundary'
    VANISHING_ENTROPY = 'vanishing_entropy'
    INDETERMINATE = 'indeterminate'


class SpectrumClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    regime: Regime
    # lower bound S >= coefficient * log n (+ o(1)); log 2 at the boundary
    coefficient: Optional[float] = None


class ClosedFormFamily(str, Enum):
    COMPLETE_ADJ = 'complete_adj'
    COMPLETE_L = 'complete_l'
    COMPLETE_NL = 'complete_nl'
    BIPARTITE_ADJ = 'bipartite_adj'
    BIPARTITE_L = 'bipartite_l'
    BIPARTITE_EQUAL_L = 'bipartite_equal_l'
    BIPARTITE_EQUAL_NL = 'bipartite_equal_nl'
    STAR_ADJ = 'star_adj'
    STAR_L = 'star_l'
    STAR_NL = 'star_nl'
    EMPTY_ADJ = 'empty_adj'
    EMPTY_L = 'empty_l'
    CYCLE_ADJ = 'cycle_adj'
    CYCLE_L = 'cycle_l'
    CYCLE_NL = 'cycle_nl'

    @property
    def kind(self) -> MatrixKind:
        if self.value.endswith('_adj'):
            return MatrixKind.ADJACENCY
        if self.value.endswith('_nl'):
            return MatrixKind.NORMALIZED_LAPLACIAN
        return MatrixKind.LAPLACIAN


# Generator specs

class _SpecBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    deterministic: ClassVar[bool] = False


class ErdosRenyiSpec(_SpecBase):
    family: Literal['er'] = 'er'
    n: int = Field(ge=0)
    p: float = Field(ge=0.0, le=1.0)


class ChungLuSpec(_SpecBase):
    family: Literal['cl'] = 'cl'
    weights: Tuple[Annotated[float, Field(gt=0.0)], ...]

    @property
    def n(self) -> int:
        return len(self.weights)


class WattsStrogatzSpec(_SpecBase):
    family: Literal['ws'] = 'ws'
    n: int = Field(ge=1)
    K: int = Field(ge=2)
    beta: float = Field(ge=0.0, le=1.0)

    @model_validator(mode='after')
    def _check_lattice(self):
        if self.K % 2:
            raise ValueError("K must be even")
        if self.K >= self.n:
            raise ValueError("K must be smaller than n")
        return self


class BarabasiAlbertSpec(_SpecBase):
    family: Literal['ba'] = 'ba'
    n: int = Field(ge=1)
    m0: int = Field(ge=1)
    m: int = Field(ge=1)

    @model_validator(mode='after')
    def _check_seed_clique(self):
        if self.m > self.m0:
            raise ValueError("m must not exceed m0")
        if self.n < self.m0:
            raise ValueError("n must be at least m0")
        return self


class EmptySpec(_SpecBase):
    deterministic: ClassVar[bool] = True
    family: Literal['empty'] = 'empty'
    n: int = Field(ge=0)


class CompleteSpec(_SpecBase):
    deterministic: ClassVar[bool] = True
    family: Literal['complete'] = 'complete'
    n: int = Field(ge=0)


class CompleteBipartiteSpec(_SpecBase):
    deterministic: ClassVar[bool] = True
    family: Literal['bipartite'] = 'bipartite'
    n1: int = Field(ge=1)
    n2: int = Field(ge=1)

    @property
    def n(self) -> int:
        return self.n1 + self.n2


class StarSpec(_SpecBase):
    """Star K_{n1,1}; the centre is vertex 0"""
    deterministic: ClassVar[bool] = True
    family: Literal['star'] = 'star'
    n1: int = Field(ge=1)

    @property
    def n(self) -> int:
        return self.n1 + 1


class CycleSpec(_SpecBase):
    deterministic: ClassVar[bool] = True
    family: Literal['cycle'] = 'cycle'
    n: int = Field(ge=3)


GeneratorSpec = Annotated[
    Union[
        ErdosRenyiSpec,
        ChungLuSpec,
        WattsStrogatzSpec,
        BarabasiAlbertSpec,
        EmptySpec,
        CompleteSpec,
        CompleteBipartiteSpec,
        StarSpec,
        CycleSpec,
    ],
    Field(discriminator='family'),
]


# Command layer

class SweepConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    kind: MatrixKind
    tau_min: Optional[float] = Field(default=None, ge=0.0)
    tau_max: Optional[float] = Field(default=None, ge=0.0)
    tau_points: Optional[int] = Field(default=None, ge=1)
    tau_log: Optional[bool] = None
    samples: int = Field(ge=1)
    seed: RngSeed = 0
    lcc: bool = False
    fraction: Optional[float] = Field(default=None, gt=0.0, le=1.0)
    matched_er: bool = False

    def grid(self) -> TauGrid:
        """Configured default grid, with any of the four tau options overriding it"""
        overrides = (self.tau_min, self.tau_max, self.tau_points, self.tau_log)
        if all(value is None for value in overrides):
            return TauGrid.default()
        return TauGrid.build(
            get_setting('TAU_MIN') if self.tau_min is None else self.tau_min,
            get_setting('TAU_MAX') if self.tau_max is None else self.tau_max,
            get_setting('TAU_POINTS') if self.tau_points is None else self.tau_points,
            get_setting('TAU_LOG') if self.tau_log is None else self.tau_log,
        )


class CheckEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    case: str
    kind: MatrixKind
    n: int
    tau: float
    discrepancy: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.tolerance


class CheckReport(BaseModel):
    entries: List[CheckEntry] = Field(default_factory=list)
    skipped: List[str] = Field(default_factory=list)
    violations: List[str] = Field(default_factory=list)

    @property
    def max_discrepancy(self) -> float:
        return max((e.discrepancy for e in self.entries), default=0.0)

    @property
    def passed(self) -> bool:
        return not self.violations and all(e.passed for e in self.entries)
