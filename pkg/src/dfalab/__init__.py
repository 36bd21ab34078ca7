"""dfalab: a workbench for DFA intersection non-emptiness.

Solver (product construction and on-the-fly search with witness
extraction), two machine-to-DFA-family compilers, an amplification
self-reduction, text formats for every object, and a verification and
benchmark harness.
"""

from .amplify import amplify, universal_dfa
from .automata import (DEFAULT_PRODUCT_CAP, Dfa, IntersectionInstance,
                       SearchOutcome, Witness, bounded_search,
                       intersect_nonempty, product, search_intersection)
from .encoding import TraceEncoding, TraceTuple6, TraceTuple8
from .engine import compiled_available, default_engine, get_kernel
from .errors import (AlphabetMismatch, DfalabError, EncodingOverflow,
                     InvalidMachine, InvalidStep, InvalidTarget,
                     MalformedTrace, ParseError, SizeOverflow,
                     StateSpaceTooLarge, UnknownSymbol, ValidationError)
from .machine import (Configuration, OfflineNtm, Run, Transition,
                      all_configurations, configuration_count,
                      find_accepting_run, initial_configuration, input_read,
                      oracle_accepts, savitch_accepts, savitch_reach, step)
from .reductions import (CompiledFamily, Provenance, compile_kozen,
                         compile_linear, decode_witness, kozen_block_length,
                         run_to_witness)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
