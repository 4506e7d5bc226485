"""Exceptions raised by rectipoly."""


class RectipolyError(Exception):
    """Base class of all rectipoly errors."""


class MeshValidationError(RectipolyError, ValueError):
    """Vertex and face lists do not describe a valid polyhedral surface."""


class NonManifoldEdge(MeshValidationError):
    pass


class BadVertexLink(MeshValidationError):
    pass


class NonPlanarFace(MeshValidationError):
    pass


class DegenerateFace(MeshValidationError):
    pass


class InconsistentOrientation(MeshValidationError):
    pass


class BadFaceContact(MeshValidationError):
    """Two faces share two or more vertices without sharing exactly one edge."""


class ParseError(RectipolyError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class OpenMesh(RectipolyError):
    """Operation requires a closed mesh."""


class NonQuarterArc(RectipolyError):
    """A face incident to the vertex has no right angle there."""


class SamplingFailure(RectipolyError):
    pass


class UnrealizablePattern(SamplingFailure):
    pass


class CollinearityViolation(RectipolyError):
    pass


class NotRectangleFaced(RectipolyError):
    pass


class ConstructionSelfCheck(RectipolyError):
    pass


class FoldMismatch(RectipolyError):
    pass


class EmptyNet(RectipolyError, ValueError):
    pass
