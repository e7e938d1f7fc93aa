"""
Document format: one object per JSON file, tagged with its kind.

    {"format_version": 1, "kind": "<kind>", "data": {...}}

Rationals are strings "p/q" or "p". Functions, bundles, cocycles and germ
families only make sense on a complex or skeleton, which the caller passes
in; morphism documents carry their source and target complexes.
"""

import json
import logging

from . import schema
from .curveSkeleton import Cocycle, CurveSkeleton, LinGermFamily
from .decompositionDatum import DecompositionBounds, DecompositionDatum
from .errors import DocumentSyntaxError, SchemaError
from .metrizedBundle import MetrizedBundle
from .simpleFunction import SimpleFunction
from .skeletonMorphism import SkeletonMorphism
from .weightedComplex import WeightedComplex


LOGGER = logging.getLogger(__name__)

FORMAT_VERSION = 1


class DocumentKind(object):
    """
    Enum class of document kinds
    """

    complex = 'complex'
    function = 'function'
    bundle = 'bundle'
    morphism = 'morphism'
    skeleton = 'skeleton'
    cocycle = 'cocycle'
    germ_family = 'germ_family'
    decomposition = 'decomposition'
    bounds = 'bounds'

    ALL = (complex, function, bundle, morphism, skeleton, cocycle, germ_family, decomposition, bounds)


# kinds read against a complex, and those needing a curve skeleton
ON_COMPLEX = (DocumentKind.function, DocumentKind.bundle)
ON_SKELETON = (DocumentKind.cocycle, DocumentKind.germ_family)

_TYPES = {
    WeightedComplex: DocumentKind.complex,
    SimpleFunction: DocumentKind.function,
    MetrizedBundle: DocumentKind.bundle,
    SkeletonMorphism: DocumentKind.morphism,
    CurveSkeleton: DocumentKind.skeleton,
    Cocycle: DocumentKind.cocycle,
    LinGermFamily: DocumentKind.germ_family,
    DecompositionDatum: DocumentKind.decomposition,
    DecompositionBounds: DocumentKind.bounds,
}


class Document(object):
    """
    A parsed document: its kind and the validated object it holds
    """

    def __init__(self, kind, body):
        """
        :param kind: DocumentKind.
        :param body: the object, e.g. a WeightedComplex
        """
        self.kind = kind
        self.body = body

    @classmethod
    def of(cls, body):
        kind = _TYPES.get(type(body))
        if kind is None:
            raise TypeError('no document kind for {}'.format(type(body).__name__))
        return cls(kind, body)

    def to_dict(self):
        return {'format_version': FORMAT_VERSION, 'kind': self.kind, 'data': self.body.to_dict()}

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return serialize(self) == serialize(other)

    def __repr__(self):
        return 'Document({}, {!r})'.format(self.kind, self.body)


def _as_complex(context):
    if isinstance(context, CurveSkeleton):
        return context.complex
    return context


def parse(text, context=None):
    """
    Parse and validate a document.

    :param text: str. JSON text
    :param context: WeightedComplex or CurveSkeleton the document lives on,
                    for function, bundle, cocycle and germ_family documents
    :return: Document.
    :raise DocumentSyntaxError: text is not JSON
    :raise SchemaError: a field is missing, unknown or of the wrong shape
    :raise ValidationError: the object breaks one of its invariants
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError('line {}, column {}'.format(e.lineno, e.colno), e.msg)

    schema.expect_fields(raw, '$', required=('format_version', 'kind', 'data'))
    version = schema.expect_int(raw['format_version'], '$.format_version')
    if version != FORMAT_VERSION:
        raise SchemaError('$.format_version', 'unsupported version {}'.format(version))
    kind = raw['kind']
    if kind not in DocumentKind.ALL:
        raise SchemaError('$.kind', 'unknown kind {!r}'.format(kind))
    data = raw['data']

    if kind in ON_COMPLEX and context is None:
        raise SchemaError('$.kind', 'a {} document is read against a complex'.format(kind))
    if kind in ON_SKELETON and not isinstance(context, CurveSkeleton):
        raise SchemaError('$.kind', 'a {} document is read against a curve skeleton'.format(kind))

    if kind == DocumentKind.complex:
        body = WeightedComplex.from_dict(data, '$.data')
    elif kind == DocumentKind.function:
        body = SimpleFunction.from_dict(data, _as_complex(context), '$.data')
    elif kind == DocumentKind.bundle:
        body = MetrizedBundle.from_dict(data, _as_complex(context), '$.data')
    elif kind == DocumentKind.morphism:
        body = SkeletonMorphism.from_dict(data, '$.data')
    elif kind == DocumentKind.skeleton:
        body = CurveSkeleton.from_dict(data, '$.data')
    elif kind == DocumentKind.cocycle:
        body = Cocycle.from_dict(data, context, '$.data')
    elif kind == DocumentKind.germ_family:
        body = LinGermFamily.from_dict(data, context, '$.data')
    elif kind == DocumentKind.decomposition:
        body = DecompositionDatum.from_dict(data, '$.data')
    else:
        body = DecompositionBounds.from_dict(data, '$.data')
    LOGGER.debug('parsed %s document', kind)
    return Document(kind, body)


def serialize(document):
    """
    Canonical text of a document: sorted keys, two-space indent, canonical
    rationals and a trailing newline.

    :param document: Document or a bare object of a document kind
    :return: str.
    """
    if not isinstance(document, Document):
        document = Document.of(document)
    return json.dumps(document.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def serialize_record(body):
    """One-line form of an object, for line-delimited streams"""
    return json.dumps(body.to_dict(), sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def load(path, context=None):
    """
    Read and parse a document file.

    :param path: str. file path
    :return: Document.
    """
    with open(path, 'rb') as handle:
        raw = handle.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise DocumentSyntaxError('{} byte {}'.format(path, e.start), e.reason)
    try:
        return parse(text, context)
    except DocumentSyntaxError as e:
        raise DocumentSyntaxError('{} {}'.format(path, e.location), e.reason)


def load_complex(path):
    """
    Read a complex, accepting a skeleton document in its place.

    :return: WeightedComplex or CurveSkeleton.
    """
    document = load(path)
    if document.kind not in (DocumentKind.complex, DocumentKind.skeleton):
        raise SchemaError('$.kind', 'expected a complex or skeleton document, got {}'.format(document.kind))
    return document.body


def expect_kind(document, kind):
    if document.kind != kind:
        raise SchemaError('$.kind', 'expected a {} document, got {}'.format(kind, document.kind))
    return document.body
