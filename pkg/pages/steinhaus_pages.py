"""
Command pages for Steinhaus quadratic-form certificates.
"""
from pages.inputs import parse_form
from tilings.steinhaus import (
    embed_form, search_forms_3d, steinhaus_lemma_check, steinhaus_radii, two_squares_experiment,
)

LARGE_DIM_RANGE = 10
KNOWN_TRIPLE = (2, 6, 11)


def steinhaus_certify_page(job):
    form = parse_form(job.required('form'))
    embed_dim = job.optional('embed_dim')
    if embed_dim:
        form = embed_form(form, int(embed_dim))
    # a 4D box of range 50 is far past the enumeration cap
    bound = job.integer('range', key='steinhaus_range',
                        default=LARGE_DIM_RANGE if form.dim >= 4 else None)
    d_squares = job.optional('d_squares')
    result = steinhaus_lemma_check(form, int(d_squares) if d_squares else None, bound)
    return {'passed': result['verdict_fires'], **result}


def steinhaus_search_page(job):
    mode = job.optional('mode', 'three-squares')
    if mode == 'two-squares':
        coeff_bound = job.integer('coeff_bound', default=20)
        bound = job.integer('range', default=40)
        result = two_squares_experiment(coeff_bound, bound)
        # every passing planar form having square determinant is the expected outcome
        return {'passed': result['all_square'], 'mode': mode, **result}
    coeff_bound = job.integer('coeff_bound', default=12)
    bound = job.integer('range', default=30)
    diagonal = bool(job.optional('diagonal', True))
    found = search_forms_3d(coeff_bound, bound, diagonal)
    result = {'passed': bool(found), 'mode': mode, 'coeff_bound': coeff_bound, 'range': bound,
              'diagonal': diagonal, 'found': [list(f) for f in found], 'count': len(found)}
    if diagonal:
        result['rediscovered'] = any(tuple(sorted(f)) == KNOWN_TRIPLE for f in found)
    return result


def steinhaus_radii_page(job):
    dim = int(job.required('dim'))
    radius_max = job.rational('radius_max')
    radii = steinhaus_radii(dim, radius_max)
    return {
        'passed': True,
        'dim': dim,
        'count': len(radii),
        'radii': [{'squared': n, 'radius': r} for n, r in radii],
        'tolerance': 1e-15,
    }


COMMANDS = {
    'steinhaus-certify': steinhaus_certify_page,
    'steinhaus-search': steinhaus_search_page,
    'steinhaus-radii': steinhaus_radii_page,
}
