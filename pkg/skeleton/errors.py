"""
Exception hierarchy for skeleton-kit.

Every error raised by the library derives from SkeletonKitError so the command
line can map it to exit code 1. ValidationError covers broken input contracts
of the combinatorial objects, DocumentError covers the document format itself.
"""


def _face_str(face):
    if face is None:
        return '?'
    return '{' + ','.join(str(v) for v in face) + '}'


class SkeletonKitError(Exception):
    """
    Base class for all library errors
    """


class ValidationError(SkeletonKitError):
    """
    An object violates one of its invariants
    """


class MissingSingleton(ValidationError):

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__('vertex {} has no singleton face'.format(vertex))


class NotSubsetClosed(ValidationError):

    def __init__(self, face, missing):
        self.face = face
        self.missing = missing
        super().__init__('face {} is listed but its subset {} is not'.format(
            _face_str(face), _face_str(missing)))


class SpecialFiberRelationViolated(ValidationError):

    def __init__(self, face, residual):
        self.face = face
        self.residual = residual
        super().__init__('sum of mult_i * c_(i,I) is {} on face {}, expected 0'.format(
            residual, _face_str(face)))


class RestrictionIncoherent(ValidationError):

    def __init__(self, pair, reason):
        self.pair = pair
        self.reason = reason
        super().__init__('restriction {} -> {} is incoherent: {}'.format(
            _face_str(pair[0]), _face_str(pair[1]), reason))


class DimensionMismatch(ValidationError):

    def __init__(self, where, expected, got):
        self.where = where
        self.expected = expected
        self.got = got
        super().__init__('{}: expected dimension {}, got {}'.format(where, expected, got))


class NonAdjacentClass(ValidationError):

    def __init__(self, face, vertex):
        self.face = face
        self.vertex = vertex
        super().__init__('class of vertex {} on face {} must vanish: vertex is not adjacent'.format(
            vertex, _face_str(face)))


class InvalidMultiplicity(ValidationError):

    def __init__(self, vertex, mult):
        self.vertex = vertex
        self.mult = mult
        super().__init__('vertex {} has multiplicity {}, expected a positive integer'.format(
            vertex, mult))


class DuplicateVertex(ValidationError):

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__('vertex {} is listed more than once'.format(vertex))


class MissingValue(ValidationError):

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__('no value given for vertex {}'.format(vertex))


class UnknownVertex(ValidationError):

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__('unknown vertex {}'.format(vertex))


class UnknownFace(ValidationError):

    def __init__(self, face):
        self.face = face
        super().__init__('unknown face {}'.format(_face_str(face)))


class NotOnFace(ValidationError):

    def __init__(self, face, reason):
        self.face = face
        self.reason = reason
        super().__init__('point is not on face {}: {}'.format(_face_str(face), reason))


class NegativeCoordinate(ValidationError):

    def __init__(self, vertex, value):
        self.vertex = vertex
        self.value = value
        super().__init__('coordinate at vertex {} is negative ({})'.format(vertex, value))


class StarSupportMismatch(ValidationError):

    def __init__(self, vertex, expected, got):
        self.vertex = vertex
        self.expected = expected
        self.got = got
        super().__init__('germ at {} must cover {}, got {}'.format(
            vertex, _face_str(expected), _face_str(got)))


class IncompatibleGerms(ValidationError):

    def __init__(self, face, i, j):
        self.face = face
        self.pair = (i, j)
        super().__init__('germs at {} and {} differ non-linearly along face {}'.format(
            i, j, _face_str(face)))


class NotLinearGerm(ValidationError):

    def __init__(self, face):
        self.face = face
        super().__init__('twist is not linear along face {}'.format(_face_str(face)))


class DegreeRelationViolated(ValidationError):

    def __init__(self, vertex, expected, got):
        self.vertex = vertex
        self.expected = expected
        self.got = got
        super().__init__('pullback of the special fiber at vertex {} has multiplicity {}, expected {}'.format(
            vertex, got, expected))


class NonIntegralPullback(ValidationError):

    def __init__(self, vertex, target, value):
        self.vertex = vertex
        self.target = target
        self.value = value
        super().__init__('pullback coefficient A[{}][{}] = {} is not a nonnegative integer'.format(
            vertex, target, value))


class ImageNotAFace(ValidationError):

    def __init__(self, face, image):
        self.face = face
        self.image = image
        super().__init__('image {} of face {} is not the minimal target face'.format(
            _face_str(image), _face_str(face)))


class ClassIncoherent(ValidationError):

    def __init__(self, face, vertex):
        self.face = face
        self.vertex = vertex
        super().__init__('class pullback on face {} does not match f*D_{}'.format(
            _face_str(face), vertex))


class NaturalityViolated(ValidationError):

    def __init__(self, pair):
        self.pair = pair
        super().__init__('class pullbacks do not commute with restriction {} -> {}'.format(
            _face_str(pair[0]), _face_str(pair[1])))


class ImageGermUndefined(ValidationError):

    def __init__(self, vertex, target):
        self.vertex = vertex
        self.target = target
        super().__init__('target germ at {} does not cover the image of the star of {}'.format(
            target, vertex))


class Disconnected(ValidationError):

    def __init__(self, components):
        self.components = components
        super().__init__('graph has {} connected components, expected 1'.format(components))


class NotSimple(ValidationError):

    def __init__(self, edge):
        self.edge = edge
        super().__init__('edge {} is a loop or a repeated edge'.format(_face_str(edge)))


class EmptyGraph(ValidationError):

    def __init__(self):
        super().__init__('graph has no vertices')


class NotAPermutation(ValidationError):

    def __init__(self, order):
        self.order = order
        super().__init__('{} is not a permutation of the vertices'.format(list(order)))


class InvalidLinGerm(ValidationError):

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__('germ at {} violates phi(i) * sum mult_j = sum mult_j * phi(j)'.format(vertex))


class InvalidDecomposition(ValidationError):

    def __init__(self, reason):
        self.reason = reason
        super().__init__('invalid decomposition datum: {}'.format(reason))


class DocumentError(SkeletonKitError):
    """
    The document text itself is malformed
    """


class DocumentSyntaxError(DocumentError):

    def __init__(self, location, reason):
        self.location = location
        self.reason = reason
        super().__init__('syntax error at {}: {}'.format(location, reason))


class SchemaError(DocumentError):

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__('{}: {}'.format(path, reason))


class DanglingReference(SchemaError):

    def __init__(self, path, ref):
        self.ref = ref
        super().__init__(path, 'reference to unknown id {!r}'.format(ref))
