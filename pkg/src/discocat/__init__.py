"""Type-logical grammar and compositional distributional semantics."""

from .types import (Basic, LImpl, PregroupType, Product, RImpl, SimpleType, Unit,
                    lambek_to_pregroup, parse_lambek_type, parse_pregroup_type)
from .lexicon import Grammar, load_grammar
from .pregroup import Reduction, enumerate_reductions, reduce
from .lambek import check, prove
from .parsing import parse_sentence
from .semantics import (SpaceAssignment, compile_lambek, compile_pregroup, execute,
                        meaning, name_tensor, quantise_type)
from .distributional import VectorSpaceModel, build_model
from .evaluation import report, spearman_rho

__version__ = "0.1.0"

__all__ = ["Basic", "LImpl", "PregroupType", "Product", "RImpl", "SimpleType", "Unit",
           "lambek_to_pregroup", "parse_lambek_type", "parse_pregroup_type",
           "Grammar", "load_grammar", "Reduction", "enumerate_reductions", "reduce",
           "check", "prove", "parse_sentence", "SpaceAssignment", "compile_lambek",
           "compile_pregroup", "execute", "meaning", "name_tensor", "quantise_type",
           "VectorSpaceModel", "build_model", "report", "spearman_rho"]
