"""Exception hierarchy. Every error raised on bad input derives from BlockSpecError."""


class BlockSpecError(ValueError):
    pass


class VertexOutOfRange(BlockSpecError):
    pass


class ConflictingLoopWeights(BlockSpecError):
    pass


class MalformedGraph6(BlockSpecError):
    pass


class LoopsNotRepresentable(BlockSpecError):
    pass


class HasLoops(BlockSpecError):
    pass


class NotSquare(BlockSpecError):
    pass


class NotBlockGraph(BlockSpecError):
    pass


class NotPendantEdge(BlockSpecError):
    pass


class NotPendantBlock(BlockSpecError):
    pass


class PreconditionViolated(BlockSpecError):
    pass


class WeightEqualsOne(BlockSpecError):
    pass


class SingularBlock(BlockSpecError):
    pass


class InvalidSpec(BlockSpecError):
    pass


class EmptyAttachment(InvalidSpec):
    pass


class NotP1Core(BlockSpecError):
    pass


class NotEvenPathVertex(BlockSpecError):
    pass
