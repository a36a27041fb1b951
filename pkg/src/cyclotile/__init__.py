"""Exact tools for factorizations A + B = Z_M with M = (pqr)^2: residue sets,
division sets, cyclotomic divisibility, Szabó pair certificates and complement
search."""

from .cyclotomic import (
    AverageReport,
    IntPoly,
    average_property_check,
    cyclotomic_poly,
    mask_poly,
    phi_divides,
    phi_power_identity_check,
)
from .divsets import (
    DivSet,
    Lemma24Report,
    dilate,
    dilate_check,
    div_between,
    div_pair,
    div_set,
    is_factorization_brute,
    is_factorization_sands,
    lemma24_check,
)
from .errors import *  # noqa: F401,F403
from .residue import (
    ModulusContext,
    Stratification,
    ZmSet,
    exact_part,
    is_periodic,
    make_modulus,
    notation_part,
    residue_class,
    residue_class2,
    stratify,
    subgroup_containment,
    translate,
)
from .search import (
    SearchOptions,
    SearchResult,
    TheoremReport,
    collect_complements,
    complement_search,
    random_instance,
    verify_theorem,
)
from .setio import dumps_set, load_set, parse_set, save_set
from .szabo import (
    BDecomposition,
    FormReport,
    SzaboWitness,
    build_a,
    build_b,
    check_div_structure,
    check_part_periodicity,
    check_prop210,
    check_witness,
    classify_b_form,
    decompose_b,
    recover_uvw,
    swap_periodic,
    tau,
    verify_szabo_pair,
)

__version__ = "0.1.0"
