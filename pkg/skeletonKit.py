"""
Command line for skeleton-kit: validate documents, classify simple
functions, check metrizations and morphisms, compute degrees on curve
skeletons and enumerate decomposition data.

Usage: python skeletonKit.py <command> [options]

Exit codes: 0 success, 1 the input fails validation (or a checked identity
fails), 2 usage error or unreadable file.
"""

from dotenv import load_dotenv
load_dotenv()

import argparse
import logging
import sys

from skeleton import curveSkeleton
from skeleton import decompositionDatum
from skeleton import document
from skeleton import exact
from skeleton import metrizedBundle
from skeleton import render
from skeleton import settings
from skeleton import simpleFunction
from skeleton import skeletonMorphism
from skeleton.curveSkeleton import CurveSkeleton
from skeleton.document import DocumentKind
from skeleton.errors import SkeletonKitError


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """
    Arguments parse but do not make sense together
    """


# region helpers

def _face_text(complex_, face):
    return '{' + ','.join(complex_.ordered(face)) + '}'


def _class_text(cls):
    return '(' + ','.join(exact.format_rational(v) for v in exact.entries(cls)) + ')'


def _as_complex(context):
    if isinstance(context, CurveSkeleton):
        return context.complex
    return context


def _load(path, kind, context=None):
    return document.expect_kind(document.load(path, context), kind)


def _skeleton(path):
    return _load(path, DocumentKind.skeleton)


def _morphism(path):
    return _load(path, DocumentKind.morphism)


def _components(text):
    if text.isdigit():
        return [str(k) for k in range(1, int(text) + 1)]
    return [item.strip() for item in text.split(',') if item.strip()]


def _bounds(args):
    components = _components(args.components)
    try:
        limits = [int(item) for item in args.bounds.split(',')]
    except ValueError:
        raise UsageError('--bounds must be a comma separated list of integers')
    if len(limits) != len(components):
        raise UsageError('{} bounds given for {} components'.format(len(limits), len(components)))
    return decompositionDatum.DecompositionBounds(components, limits)

# endregion


# region commands

def cmd_validate(args):
    context = document.load_complex(args.complex) if args.complex else None
    document.load(args.file, context)
    print('OK')
    return EXIT_OK


def cmd_classify(args):
    complex_ = _as_complex(document.load_complex(args.complex))
    function = _load(args.function, DocumentKind.function, complex_)
    classification = simpleFunction.classify_faces(complex_, function)
    for face in complex_.faces:
        flags = classification.flags(face)
        print('{}: {}'.format(_face_text(complex_, face), ' '.join(
            '{}={}'.format(kind, 'true' if flags[kind] else 'false') for kind in simpleFunction.Convexity.ALL)))
    for name, locus in (('LinLoc', classification.linear_locus),
                        ('ConvLoc', classification.convex_locus),
                        ('SConvLoc', classification.strictly_convex_locus)):
        faces = [_face_text(complex_, face) for face in complex_.faces if face in locus]
        print('{}: {}'.format(name, ' '.join(faces)).rstrip())
    return EXIT_OK


def cmd_curvature(args):
    complex_ = _as_complex(document.load_complex(args.complex))
    bundle = _load(args.bundle, DocumentKind.bundle, complex_)
    classes = metrizedBundle.curvature(bundle)
    for vertex in complex_.vertices:
        print('{}: {}'.format(vertex, _class_text(classes[vertex])))
    return EXIT_OK


def cmd_kahler_check(args):
    complex_ = _as_complex(document.load_complex(args.complex))
    bundle = _load(args.bundle, DocumentKind.bundle, complex_)
    print('true' if metrizedBundle.is_kahler(bundle) else 'false')
    print('metrization: {}'.format(metrizedBundle.metrization_kind(bundle)))
    return EXIT_OK


def cmd_pullback(args):
    morphism = _morphism(args.morphism)
    if args.what == 'function':
        if not args.function:
            raise UsageError('pullback function needs --function')
        function = _load(args.function, DocumentKind.function, morphism.target)
        sys.stdout.write(document.serialize(skeletonMorphism.pullback_function(morphism, function)))
        return EXIT_OK

    if not args.bundle:
        raise UsageError('pullback {} needs --bundle'.format(args.what))
    bundle = _load(args.bundle, DocumentKind.bundle, morphism.target)
    if args.what == 'bundle':
        sys.stdout.write(document.serialize(skeletonMorphism.pullback_bundle(morphism, bundle)))
        return EXIT_OK

    classes = skeletonMorphism.pullback_curvature(morphism, metrizedBundle.curvature(bundle))
    for vertex in morphism.source.vertices:
        print('{}: {}'.format(vertex, _class_text(classes[vertex])))
    return EXIT_OK


def cmd_check_functoriality(args):
    if not args.function and not args.bundle:
        raise UsageError('check-functoriality needs --function or --bundle')
    morphism = _morphism(args.morphism)
    holds = True
    if args.function:
        function = _load(args.function, DocumentKind.function, morphism.target)
        result = skeletonMorphism.check_derivative_functoriality(morphism, function)
        print('derivative: {}'.format('true' if result else 'false'))
        holds = holds and result
    if args.bundle:
        bundle = _load(args.bundle, DocumentKind.bundle, morphism.target)
        result = skeletonMorphism.check_curvature_functoriality(morphism, bundle)
        print('curvature: {}'.format('true' if result else 'false'))
        holds = holds and result
    return EXIT_OK if holds else EXIT_INVALID


def cmd_degree(args):
    skeleton = _skeleton(args.skeleton)
    cocycle = _load(args.cocycle, DocumentKind.cocycle, skeleton)
    print(exact.format_rational(curveSkeleton.bundle_degree(skeleton, cocycle)))
    return EXIT_OK


def cmd_h1(args):
    dims = curveSkeleton.h1_dimension(_skeleton(args.skeleton))
    print('h1: {}'.format(dims.h1))
    print('kernel: {}'.format(dims.kernel))
    return EXIT_OK


def cmd_reorder_check(args):
    skeleton = _skeleton(args.skeleton)
    cocycle = _load(args.cocycle, DocumentKind.cocycle, skeleton)
    order = [item.strip() for item in args.order.split(',')]
    reordered, moved = curveSkeleton.reorder(skeleton, cocycle, order)
    before = curveSkeleton.degree(skeleton, cocycle)
    after = curveSkeleton.degree(reordered, moved)
    print('degree: {}'.format(exact.format_rational(before)))
    print('reordered: {}'.format(exact.format_rational(after)))
    return EXIT_OK if before == after else EXIT_INVALID


def cmd_metrization_degree(args):
    skeleton = _skeleton(args.skeleton)
    bundle = _load(args.bundle, DocumentKind.bundle, skeleton)
    print(exact.format_rational(curveSkeleton.curvature_degree(skeleton, bundle)))
    return EXIT_OK


def _enumeration(args):
    bounds = _bounds(args)
    complex_ = _as_complex(document.load_complex(args.complex)) if args.complex else None
    return decompositionDatum.enumerate_data(
        bounds, args.g, args.n, canonical=args.canonical, complex_=complex_,
        workers=settings.enumeration_workers())


def cmd_enum_decomp(args):
    data = _enumeration(args)
    if args.count:
        print(sum(1 for _ in data))
        return EXIT_OK
    for datum in data:
        print(document.serialize_record(datum))
    return EXIT_OK


def cmd_count_decomp(args):
    print(sum(1 for _ in _enumeration(args)))
    return EXIT_OK


def cmd_canonical_decomp(args):
    datum = _load(args.file, DocumentKind.decomposition)
    sys.stdout.write(document.serialize(decompositionDatum.canonicalize(datum)))
    return EXIT_OK


def cmd_render(args):
    if args.skeleton:
        skeleton = _skeleton(args.skeleton)
        cocycle = _load(args.cocycle, DocumentKind.cocycle, skeleton) if args.cocycle else None
        sys.stdout.write(render.skeleton_dot(skeleton, cocycle))
    else:
        if args.cocycle:
            raise UsageError('--cocycle labels skeleton edges only')
        sys.stdout.write(render.decomposition_dot(_load(args.decomposition, DocumentKind.decomposition)))
    return EXIT_OK

# endregion


def _add_enumeration_arguments(sub):
    sub.add_argument('--components', required=True,
                     help='number of components, or a comma separated list of component ids')
    sub.add_argument('--bounds', required=True, help='comma separated N_i^0 per component')
    sub.add_argument('--g', type=int, required=True, help='genus')
    sub.add_argument('--n', type=int, required=True, help='number of marked points')
    sub.add_argument('--canonical', action='store_true', help='only canonical representatives')
    sub.add_argument('--complex', help='keep data whose nodes lie over edges of this complex')


def build_parser():
    parser = argparse.ArgumentParser(prog='skeletonKit', description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('validate', help='parse and validate a document')
    sub.add_argument('file')
    sub.add_argument('--complex', help='complex or skeleton the document lives on')
    sub.set_defaults(handler=cmd_validate)

    sub = commands.add_parser('classify', help='linear, convex and strictly convex faces of a function')
    sub.add_argument('--complex', required=True)
    sub.add_argument('--function', required=True)
    sub.set_defaults(handler=cmd_classify)

    for name, handler, text in (('curvature', cmd_curvature, 'curvature of a metrized bundle'),
                                ('kahler-check', cmd_kahler_check, 'whether a metrization is Kahler')):
        sub = commands.add_parser(name, help=text)
        sub.add_argument('--complex', required=True)
        sub.add_argument('--bundle', required=True)
        sub.set_defaults(handler=handler)

    sub = commands.add_parser('pullback', help='pull a function, bundle or curvature back along a morphism')
    sub.add_argument('what', choices=('function', 'bundle', 'curvature'))
    sub.add_argument('--morphism', required=True)
    sub.add_argument('--function')
    sub.add_argument('--bundle')
    sub.set_defaults(handler=cmd_pullback)

    sub = commands.add_parser('check-functoriality', help='check derivative and curvature functoriality')
    sub.add_argument('--morphism', required=True)
    sub.add_argument('--function')
    sub.add_argument('--bundle')
    sub.set_defaults(handler=cmd_check_functoriality)

    sub = commands.add_parser('degree', help='degree of a cocycle on a skeleton')
    sub.add_argument('--skeleton', required=True)
    sub.add_argument('--cocycle', required=True)
    sub.set_defaults(handler=cmd_degree)

    sub = commands.add_parser('h1', help='dimension of H1 of the linear germs and of ker d0')
    sub.add_argument('--skeleton', required=True)
    sub.set_defaults(handler=cmd_h1)

    sub = commands.add_parser('reorder-check', help='degree before and after a vertex reordering')
    sub.add_argument('--skeleton', required=True)
    sub.add_argument('--cocycle', required=True)
    sub.add_argument('--order', required=True, help='comma separated vertex ids')
    sub.set_defaults(handler=cmd_reorder_check)

    sub = commands.add_parser('metrization-degree', help='degree of the curvature of a metrization')
    sub.add_argument('--skeleton', required=True)
    sub.add_argument('--bundle', required=True)
    sub.set_defaults(handler=cmd_metrization_degree)

    sub = commands.add_parser('enum-decomp', help='stream decomposition data of type (g, n)')
    _add_enumeration_arguments(sub)
    sub.add_argument('--count', action='store_true', help='print the number of data only')
    sub.set_defaults(handler=cmd_enum_decomp)

    sub = commands.add_parser('count-decomp', help='number of decomposition data of type (g, n)')
    _add_enumeration_arguments(sub)
    sub.set_defaults(handler=cmd_count_decomp)

    sub = commands.add_parser('canonical-decomp', help='canonical form of a decomposition datum')
    sub.add_argument('file')
    sub.set_defaults(handler=cmd_canonical_decomp)

    sub = commands.add_parser('render', help='DOT text of a skeleton or decomposition graph')
    target = sub.add_mutually_exclusive_group(required=True)
    target.add_argument('--skeleton')
    target.add_argument('--decomposition')
    sub.add_argument('--cocycle', help='label skeleton edges with this cocycle')
    sub.set_defaults(handler=cmd_render)

    return parser


def run(argv=None):
    """
    Run one command.

    :param argv: [str]. arguments without the program name
    :return: int. exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        LOGGER.error('%s', e)
        return EXIT_USAGE
    except OSError as e:
        LOGGER.error('cannot read %s: %s', e.filename, e.strerror)
        return EXIT_USAGE
    except SkeletonKitError as e:
        LOGGER.error('%s: %s', type(e).__name__, e)
        return EXIT_INVALID


def main():
    logging.basicConfig(level=settings.log_level())
    sys.exit(run())


if __name__ == '__main__':
    main()
