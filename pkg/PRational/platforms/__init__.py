from .Pari import PariAPI, OracleVerdict
