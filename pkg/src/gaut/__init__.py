"""Graph automata over state relations.

Expressions built from atoms, unit wires, the swap, and single-node
constants evaluate both to hypergraphs and to state relations; graph
automata assign transition relations to atoms and accept a graph when its
relation meets the initial/final word sets.  The flagship recognizer
decides k-colorability, cross-checked by explicit search and brute force.
"""
from .automaton import (
    ExplicitWords,
    GraphAutomaton,
    RunWitness,
    UniversalWords,
    accepts,
    behavior_member,
    explicit_words,
    extend_delta,
    run_search,
)
from .axioms import EQUATIONS, AxiomCheck, AxiomReport, check_axioms
from .colorability import (
    Coloring,
    is_k_colorable,
    make_color_automaton,
    oracle_k_colorable,
    verify_coloring,
)
from .encoder import (
    LABEL_A,
    SimpleDigraph,
    as_hypergraph,
    encode_digraph,
    encode_graph,
    parse_graph_input,
    to_digraph,
)
from .errors import (
    BudgetExceeded,
    EmptyStateSet,
    GautError,
    IncompleteColoring,
    InvalidK,
    InvalidPermutation,
    ParseError,
    RankMismatch,
    UnknownSymbol,
)
from .hypergraph import (
    Edge,
    Hypergraph,
    atom_graph,
    eval_graph,
    graph,
    graph_product,
    graph_sum,
    iconst_graph,
    isomorphic,
    pi_graph,
    unit_graph,
)
from .relations import (
    DSet,
    StateRelation,
    compose,
    diagonal,
    eval_term,
    relation,
    sum_rel,
    swap_rel,
    tsrel_dset,
    unit_e,
)
from .terms import (
    Atom,
    AtomSymbol,
    Iconst,
    Pi,
    Prod,
    Rank,
    SumBox,
    Term,
    UnitE,
    atoms_of,
    box_all,
    parse_term,
    perm_term,
    print_term,
    prod_all,
    rank_of,
    s_m1_term,
    wire_permutation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
