from .semantics import (
    SCHEMES,
    Countermodel,
    axiom_instance,
    countermodel_search,
    evaluate,
    is_valid_in,
    models_up_to,
    valuations,
)
from .syntax import (
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    ParseError,
    Tangle,
    Top,
    Var,
    conj,
    formula_key,
    parse,
    to_text,
    variables,
)
