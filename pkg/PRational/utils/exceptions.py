class PRationalError(Exception):
    def __init__(self, errr: str):
        super().__init__(errr)


class NotCoprime(PRationalError):
    pass


class NoRepresentation(PRationalError):
    pass


class NoReconstruction(PRationalError):
    pass


class FieldConstructionError(PRationalError):
    pass


class RamifiedPrime(PRationalError):
    pass


class InvalidConductor(PRationalError):
    pass


class NotInFamily(PRationalError):
    pass


class LiftFailure(PRationalError):
    pass


class IndexDivisor(PRationalError):
    pass


class NoGeneratorFound(PRationalError):
    pass


class BadPrime(PRationalError):
    pass


class BadSupport(PRationalError):
    pass


class CheckpointCorrupt(PRationalError):
    pass


class OracleUnavailable(PRationalError):
    pass


class OracleTimeout(OracleUnavailable):
    pass


class OracleParseError(PRationalError):
    def __init__(self, errr: str, transcript: str = ""):
        super().__init__(errr)
        self.transcript = transcript


class DependentGenerators(PRationalError):
    pass


class CapExceeded(PRationalError):
    def __init__(self, errr: str, partial=None):
        super().__init__(errr)
        self.partial = list(partial or [])


class DegreeDivisibleByP(PRationalError):
    pass
