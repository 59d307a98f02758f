"""Exact matrices over the Gaussian rationals and functionals on gl(n).

``ExactMatrix`` wraps a sparse sympy ``DomainMatrix`` over ``QQ_I``; every
operation is exact. Linear functionals on gl(n) are stored through the trace
pairing: f(Z) = tr(dual . Z), so f(E_ab) is the (b, a) entry of the dual.
Indices of elementary matrices E_ab are 1-based as in the usual notation;
``entry`` and friends are 0-based.
"""

import logging
import random
from fractions import Fraction
from itertools import product as cartesian_product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from src.errors import DomainError, ParseError
from src.parsing import parse_complex
from src.partitions import Composition, Partition, transpose
from src.scalars import ExactComplex, format_complex
from src.schemas import LinalgLemmaReport

# Configure logging
logger = logging.getLogger(__name__)

# Constants
RANDOM_ENTRY_BOUND = 3
RANDOM_RATIONAL_BOUND = 5


class ExactMatrix:
    """Immutable exact matrix with entries in Q(i)."""

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ_I:
            dm = dm.convert_to(QQ_I)
        if dm.shape[0] < 1 or dm.shape[1] < 1:
            raise DomainError(f"matrices need positive dimensions, got {dm.shape}")
        self._dm = dm.to_sparse()

    # Construction

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Dict[Tuple[int, int], object]) -> "ExactMatrix":
        """Build from a 0-based {(i, j): value} map; missing entries are zero."""
        data: Dict[int, Dict[int, object]] = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DomainError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            scalar = ExactComplex.of(value)
            if not scalar.is_zero:
                data.setdefault(i, {})[j] = scalar.to_domain()
        return cls(DomainMatrix(data, (rows, cols), QQ_I))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "ExactMatrix":
        if not rows or not rows[0]:
            raise DomainError("a matrix needs at least one row and one column")
        width = len(rows[0])
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DomainError(f"row {i} has {len(row)} entries, expected {width}")
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls.from_entries(len(rows), width, entries)

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "ExactMatrix":
        return cls.from_entries(rows, rows if cols is None else cols, {})

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_entries(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def elementary(cls, n: int, a: int, b: int) -> "ExactMatrix":
        """E_ab in gl(n), 1-based."""
        return cls.from_entries(n, n, {(a - 1, b - 1): 1})

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "ExactMatrix":
        return cls.from_entries(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    # Inspection

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> ExactComplex:
        return ExactComplex.from_domain(self._dm[i, j].element)

    def nonzero_entries(self) -> Dict[Tuple[int, int], ExactComplex]:
        return {
            key: ExactComplex.from_domain(value)
            for key, value in self._dm.to_dok().items()
            if value != QQ_I.zero
        }

    def to_rows(self) -> List[List[ExactComplex]]:
        return [[ExactComplex.from_domain(value) for value in row] for row in self._dm.to_list()]

    @property
    def is_zero(self) -> bool:
        return all(value == QQ_I.zero for value in self._dm.to_dok().values())

    # Arithmetic

    def _check_shape(self, other: "ExactMatrix", op: str) -> None:
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch for {op}: {self.shape} and {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other, "+")
        return ExactMatrix(self._dm.add(other._dm))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other, "-")
        return ExactMatrix(self._dm.sub(other._dm))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self._dm.neg())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(self._dm.matmul(other._dm))

    def scale(self, value: object) -> "ExactMatrix":
        return ExactMatrix(self._dm.mul(ExactComplex.of(value).to_domain()))

    def __pow__(self, exponent: int) -> "ExactMatrix":
        if not self.is_square:
            raise DomainError(f"powers need a square matrix, got {self.shape}")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            exponent >>= 1
            if exponent:
                base = base @ base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero

    __hash__ = None  # type: ignore[assignment]

    def rank(self) -> int:
        return self._dm.rank()

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self._dm.transpose())

    def trace(self) -> ExactComplex:
        if not self.is_square:
            raise DomainError(f"trace needs a square matrix, got {self.shape}")
        total = ExactComplex()
        for (i, j), value in self.nonzero_entries().items():
            if i == j:
                total = total + value
        return total

    def inverse(self) -> "ExactMatrix":
        if not self.is_square or self.rank() < self.rows:
            raise DomainError("matrix is not invertible")
        return ExactMatrix(self._dm.to_dense().inv())

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        return format_matrix(self)


def format_matrix(matrix: ExactMatrix) -> str:
    """One row per line, entries in canonical ``a+b*i`` form separated by spaces."""
    return "\n".join(" ".join(format_complex(value) for value in row) for row in matrix.to_rows())


def parse_matrix(text: str) -> ExactMatrix:
    """
    Parse the plain-text matrix format: one row per line, ``#`` starts a comment.

    Raises:
        ParseError: Malformed entries or ragged rows, with the absolute position
    """
    rows: List[List[ExactComplex]] = []
    offset = 0
    for line in text.splitlines(keepends=True):
        content = line.split("#", 1)[0]
        column = 0
        row: List[ExactComplex] = []
        for word in content.split():
            start = content.index(word, column)
            column = start + len(word)
            try:
                row.append(parse_complex(word))
            except ParseError as e:
                position = offset + start + (e.position or 0)
                raise ParseError(e.message, position)
        if row:
            if rows and len(row) != len(rows[0]):
                raise ParseError(f"row has {len(row)} entries, expected {len(rows[0])}", offset)
            rows.append(row)
        offset += len(line)
    if not rows:
        raise ParseError("no matrix rows found", 0)
    return ExactMatrix.from_rows(rows)


def jordan_matrix(parts: Composition) -> ExactMatrix:
    """Block-diagonal matrix of upper Jordan blocks of the given sizes, in order."""
    if parts.n < 1:
        raise DomainError("jordan_matrix needs a composition of a positive integer")
    entries = {}
    start = 0
    for size in parts.parts:
        for i in range(start, start + size - 1):
            entries[(i, i + 1)] = 1
        start += size
    return ExactMatrix.from_entries(parts.n, parts.n, entries)


def longest_element(n: int) -> ExactMatrix:
    """The antidiagonal permutation matrix w_0."""
    return ExactMatrix.from_entries(n, n, {(i, n - 1 - i): 1 for i in range(n)})


def random_invertible(n: int, rng: random.Random) -> ExactMatrix:
    """Random invertible matrix with small rational entries."""
    while True:
        matrix = ExactMatrix.from_rows([
            [Fraction(rng.randint(-RANDOM_ENTRY_BOUND, RANDOM_ENTRY_BOUND), rng.randint(1, 2))
             for _ in range(n)]
            for _ in range(n)
        ])
        if matrix.rank() == n:
            return matrix


def random_unimodular(n: int, rng: random.Random, steps: Optional[int] = None) -> ExactMatrix:
    """Random integer matrix of determinant 1, built from elementary row additions."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n > 1:
        for _ in range(steps if steps is not None else 3 * n):
            source, target = rng.sample(range(n), 2)
            factor = rng.choice([-2, -1, 1, 2])
            rows[target] = [t + factor * s for t, s in zip(rows[target], rows[source])]
    return ExactMatrix.from_rows(rows)


def rank_sequence(matrix: ExactMatrix) -> List[int]:
    """rank(A^0), rank(A^1), ... up to the first zero or A^n."""
    n = matrix.rows
    ranks = [n]
    power = matrix
    for _ in range(n):
        ranks.append(power.rank())
        if ranks[-1] == 0:
            break
        power = power @ matrix
    return ranks


def jordan_partition(matrix: ExactMatrix) -> Partition:
    """
    Jordan type of a nilpotent matrix.

    The k-th column length of the partition is rank(A^{k-1}) - rank(A^k).

    Raises:
        DomainError: For non-square or non-nilpotent input
    """
    if not matrix.is_square:
        raise DomainError(f"jordan_partition needs a square matrix, got {matrix.shape}")
    ranks = rank_sequence(matrix)
    if ranks[-1] != 0:
        raise DomainError(f"matrix is not nilpotent: A^{matrix.rows} is nonzero (rank {ranks[-1]})")
    columns = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return transpose(Partition(parts=tuple(columns)))


class LinearFunctional:
    """A linear functional on gl(n), f(Z) = tr(dual . Z)."""

    __slots__ = ("n", "dual")

    def __init__(self, dual: ExactMatrix):
        if not dual.is_square:
            raise DomainError(f"a functional on gl(n) needs a square dual, got {dual.shape}")
        self.n = dual.rows
        self.dual = dual

    @classmethod
    def from_values(cls, n: int, values: Dict[Tuple[int, int], object]) -> "LinearFunctional":
        """Functional taking ``value`` on E_ab for each 1-based (a, b) and zero elsewhere."""
        return cls(ExactMatrix.from_entries(n, n, {(b - 1, a - 1): v for (a, b), v in values.items()}))

    def evaluate(self, matrix: ExactMatrix) -> ExactComplex:
        return (self.dual @ matrix).trace()

    def on_elementary(self, a: int, b: int) -> ExactComplex:
        return self.dual.entry(b - 1, a - 1)

    def support(self) -> Set[Tuple[int, int]]:
        """1-based (a, b) with f(E_ab) != 0."""
        return {(j + 1, i + 1) for (i, j) in self.dual.nonzero_entries()}

    def plus(self, other: "LinearFunctional") -> "LinearFunctional":
        return LinearFunctional(self.dual + other.dual)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.dual == other.dual

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearFunctional(n={self.n}, support={sorted(self.support())})"


def psi_lambda(parts: Composition, n: int) -> LinearFunctional:
    """
    Character of the unipotent radical attached to a composition.

    The dual matrix is w_0 J w_0^{-1} with J block diagonal of upper Jordan
    blocks; for parts = (n) this gives Z -> sum_j Z_{j,j+1}.

    Raises:
        DomainError: If the composition does not sum to n
    """
    if parts.n != n:
        raise DomainError(f"composition {parts} sums to {parts.n}, expected {n}")
    w0 = longest_element(n)
    return LinearFunctional(w0 @ jordan_matrix(parts) @ w0)


def depth_of_functional(functional: LinearFunctional) -> int:
    """
    Smallest d >= 1 with dual^d = 0.

    Raises:
        DomainError: If the dual matrix is not nilpotent
    """
    power = functional.dual
    for d in range(1, functional.n + 1):
        if power.is_zero:
            return d
        power = power @ functional.dual
    raise DomainError(f"dual matrix is not nilpotent: its {functional.n}-th power is nonzero")


def _linalg_u(n: int, d: int, first_row: int) -> ExactMatrix:
    return ExactMatrix.from_entries(n, n, {(j - 1, j): 1 for j in range(first_row, n)})


def _linalg_v(n: int, d: int, v: Sequence[object]) -> ExactMatrix:
    return ExactMatrix.from_entries(n, n, {(row, n - d): value for row, value in enumerate(v)})


def linalg_samples(n: int, d: int, rng: random.Random, trials: int) -> List[Tuple[ExactComplex, ...]]:
    """All v in {-1,0,1}^{n-d} followed by ``trials`` random rational vectors."""
    width = n - d
    samples = [
        tuple(ExactComplex.of(x) for x in values)
        for values in cartesian_product((-1, 0, 1), repeat=width)
    ]
    for _ in range(trials):
        samples.append(tuple(
            ExactComplex.of(Fraction(
                rng.randint(-RANDOM_RATIONAL_BOUND, RANDOM_RATIONAL_BOUND),
                rng.randint(1, RANDOM_RATIONAL_BOUND),
            ))
            for _ in range(width)
        ))
    return samples


def verify_linalg_lemma(n: int, d: int, vs: Iterable[Sequence[object]]) -> LinalgLemmaReport:
    """
    Check that (u+v)^d = 0 forces v = 0.

    u has ones at (j, j+1) for j = n-d+1..n-1 and v fills column n-d+1 in rows
    1..n-d. The closed form (u+v)^d = v moved to column n is checked as well.

    Args:
        n: Matrix size
        d: Depth, 1 <= d <= n
        vs: Sample vectors of length n-d

    Returns:
        LinalgLemmaReport; ``passed`` iff every sample satisfied both checks
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    u = _linalg_u(n, d, n - d + 1)
    failures: List[str] = []
    closed_form_ok = True
    samples = 0
    for v in vs:
        v = tuple(ExactComplex.of(x) for x in v)
        if len(v) != n - d:
            raise DomainError(f"v must have {n - d} entries, got {len(v)}")
        samples += 1
        power = (u + _linalg_v(n, d, v)) ** d
        expected = ExactMatrix.from_entries(n, n, {(row, n - 1): value for row, value in enumerate(v)})
        if power != expected:
            closed_form_ok = False
            failures.append(f"closed form fails for v = ({', '.join(map(str, v))})")
        v_is_zero = all(x.is_zero for x in v)
        if power.is_zero != v_is_zero:
            failures.append(f"(u+v)^{d} = 0 does not match v = 0 for v = ({', '.join(map(str, v))})")

    counterexample = None
    if d < n:
        alternative_u = _linalg_u(n, d, n - d)
        v = [0] * (n - d)
        v[-1] = -1
        if ((alternative_u + _linalg_v(n, d, v)) ** d).is_zero:
            counterexample = (
                f"with d ones starting at ({n - d},{n - d + 1}), "
                f"v = -e_{n - d} is nonzero yet (u+v)^{d} = 0"
            )

    logger.info(f"Checked {samples} vectors for n={n}, d={d}: {len(failures)} failures")
    return LinalgLemmaReport(
        n=n,
        d=d,
        samples=samples,
        closed_form=f"(u+v)^{d} has v in column {n}, rows 1..{n - d}, and zeros elsewhere",
        closed_form_ok=closed_form_ok,
        failures=failures,
        alternative_counterexample=counterexample,
        passed=not failures,
    )
