"""Toolkit for piecewise-testable languages over the subword order."""

from .automata import (Dfa, Nfa, complement, determinize, difference, down_word_dfa, equivalent,
                       includes, intersect, is_empty, is_universal, minimize, nfa_depth,
                       shortest_separator, shortest_word, to_dfa, union, up_word_dfa, word_dfa)
from .cfg import Cfg, parse_cfg
from .closures import (Morphism, down_closure, inverse_morphism, lower_bound_witness, min_lang,
                       min_words, strict_down, strict_up, up_closure, up_closure_cfg)
from .dproduct import (DProduct, Letter, Star, down_closure_dproduct, dproduct_cover_nfa,
                       dproduct_for_word, dproduct_member, dproduct_to_nfa, parse_dproduct)
from .errors import (AlphabetError, CapExceeded, ParseError, PreconditionError, PtkError,
                     UnsupportedConstruct, VerificationError)
from .fo2 import Formula, decide, eliminate, height_ledger, parse_formula
from .incomparability import (I_of_pt, in_C, in_I, incomparability_singleton, layer_report,
                              two_witness)
from .regex import regex_to_dfa, regex_to_nfa
from .simon import (ClassAutomaton, SubwordProfile, class_automaton, delta, enumerate_class,
                    is_n_pt, profile, pt_height_dfa, pt_height_finite, pt_height_word, sim_equiv,
                    small_subword)
from .words import (Alphabet, Relation, compare, distinct_subwords, f, f_upper, generate_Pk_Nk,
                    generate_Uk, is_incomparable, is_subword, rich_factorization, richness,
                    shuffle_with_alphabet)

__version__ = "0.1.0"
