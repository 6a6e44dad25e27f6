from .exceptions import *
from .formatters import *
from .verdict import *
