"""Exception types raised across the package."""


class G2ChowError(ValueError):
    """Base class for all domain errors."""


class InvalidProjective(G2ChowError):
    pass


class DimensionMismatch(G2ChowError):
    pass


class NotAdmissible(G2ChowError):
    """The pair set is not the basis pattern of any rank-2 matroid (empty stratum)."""


class OutOfHypersimplex(G2ChowError):
    pass


class LiftUndefined(G2ChowError):
    """A product defining some c_ij evaluates to (0, 0).

    ``pair`` holds the offending (p, q) and ``locus`` names it as ``G_pq``
    (both inputs at (1:0)) or ``G'_pq`` (both at (0:1)).
    """

    def __init__(self, pair, locus):
        self.pair = pair
        self.locus = locus
        super().__init__(f"lift undefined on {locus} (pair {pair})")


class TransitionSingular(G2ChowError):
    def __init__(self, target, pair):
        self.target = target
        self.pair = pair
        super().__init__(f"transition to chart {target} evaluates to (0, 0) at {pair}")


class NotBoundary(G2ChowError):
    pass


class ScheduleInvalid(G2ChowError):
    pass


class NotInCycle(G2ChowError):
    pass


class LimitUndefined(G2ChowError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"limit indeterminate at coordinate {pair}")
