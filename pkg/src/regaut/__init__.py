"""Register automata over (N;=) and (Q;<,=).

Exact checks for unambiguity, universality of unambiguous register automata
and containment in one-register unambiguous automata with guessing, each
paired with a brute-force oracle.
"""
from .automaton import (GRA, RA, AmbiguityWitness, Automaton, Edge, State, accepts,
                        check_unambiguous_ra, count_accepting_runs, is_clean, make_clean,
                        state_successors, validate)
from .config import (FiniteOrCofinite, GConfig, Renaming, SyncConfig, canonicalize,
                     input_representatives, plus_minus, succ_config, succ_gconfig, support)
from .core import (BOT, INPUT, TRUE, Atom, And, Constraint, Domain, DomainError, Input,
                   Not, Or, Reg, RegNext, TrueC, eval_constraint, is_guess_free, make_word)
from .decide import (Contained, ContainedUpToDepth, FullSubsetWitness, NotContained,
                     NotUniversal, Universal, bound_B, check_containment_gura,
                     check_containment_ra_ura_bounded, check_universality_ura_nat,
                     check_universality_ura_rat1, collapse, decide_universality,
                     find_full_subset, indistinguishable_pairs)
from .dsl import ParseError, SourceSpan, parse_automaton, parse_word, print_automaton
from .oracle import (OracleBudget, canonical_words, oracle_ambiguous, oracle_contained,
                     oracle_reachable_configs, oracle_universal)

__version__ = "0.1.0"
