"""纽结模块：平面图、两条Alexander多项式路线与内置纽结表"""

from .diagram import (
    PlanarDiagram,
    parse_pd,
    from_crossings,
    braid_closure,
    torus_knot_2,
    crossing_change,
    oriented_smoothing,
    remove_kinks,
)
from .skein import (
    Leaf,
    Branch,
    alexander_from_diagram,
    alexander_module_smith,
    conway_from_tree,
    theta_from_tree,
    resolution_tree,
    tree_to_dict,
    tree_from_dict,
    load_tree,
    mod2_class_key,
    mod2_partition,
)
from .corpus import KnotRecord, load_corpus, resolve_knot, knot_alexander, corpus_report

__all__ = [
    'PlanarDiagram', 'parse_pd', 'from_crossings', 'braid_closure', 'torus_knot_2',
    'crossing_change', 'oriented_smoothing', 'remove_kinks',
    'Leaf', 'Branch', 'alexander_from_diagram', 'alexander_module_smith', 'conway_from_tree', 'theta_from_tree',
    'resolution_tree', 'tree_to_dict', 'tree_from_dict', 'load_tree',
    'mod2_class_key', 'mod2_partition',
    'KnotRecord', 'load_corpus', 'resolve_knot', 'knot_alexander', 'corpus_report',
]
