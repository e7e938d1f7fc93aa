"""
Field checks for decoded documents.

Every helper takes the JSON path of the value it inspects ("$.vertices[0].mult")
so a SchemaError names exactly where the document went wrong.
"""

from . import exact
from .errors import DanglingReference, SchemaError


def child(path, key):
    if isinstance(key, int):
        return '{}[{}]'.format(path, key)
    return '{}.{}'.format(path, key)


def expect_object(value, path):
    if not isinstance(value, dict):
        raise SchemaError(path, 'expected an object, got {}'.format(type(value).__name__))
    return value


def expect_fields(value, path, required=(), optional=()):
    """
    Check an object has every required field and nothing unexpected.

    :param value: dict. decoded object
    :param path: str. JSON path of the object
    :param required: (str). field names that must be present
    :param optional: (str). field names that may be present
    :return: dict. the object itself
    """
    expect_object(value, path)
    allowed = set(required) | set(optional)
    for key in sorted(value):
        if key not in allowed:
            raise SchemaError(child(path, key), 'unknown field')
    for key in required:
        if key not in value:
            raise SchemaError(child(path, key), 'missing required field')
    return value


def expect_list(value, path):
    if not isinstance(value, list):
        raise SchemaError(path, 'expected a list, got {}'.format(type(value).__name__))
    return value


def expect_str(value, path):
    if not isinstance(value, str) or not value:
        raise SchemaError(path, 'expected a non-empty string')
    return value


def expect_int(value, path, minimum=None):
    # json decodes true/false as bool, which is an int subclass
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, 'expected an integer, got {!r}'.format(value))
    if minimum is not None and value < minimum:
        raise SchemaError(path, 'expected an integer >= {}, got {}'.format(minimum, value))
    return value


def expect_rational(value, path):
    try:
        return exact.parse_rational(value)
    except ValueError as e:
        raise SchemaError(path, str(e))


def expect_rationals(value, path, length=None):
    """
    A list of rational strings, optionally of a fixed length.

    :return: [Fraction].
    """
    expect_list(value, path)
    if length is not None and len(value) != length:
        raise SchemaError(path, 'expected {} entries, got {}'.format(length, len(value)))
    return [expect_rational(v, child(path, k)) for k, v in enumerate(value)]


def expect_ref(value, path, known):
    """
    An id that must name one of the known ids.

    :param known: collection of valid ids
    """
    expect_str(value, path)
    if value not in known:
        raise DanglingReference(path, value)
    return value
