"""Diagram groups, Thompson's group F and the cell-count counterexample."""

from .core import (F_RULES, MERGE, Atom, Diagram, DiagramError, Rule, canonical, cell, d_compose,
                   d_compose_all, d_equal, d_inverse, d_length, d_mul, d_power, d_reduce, d_sum,
                   d_sum_all, dumps, epsilon, is_reduced, load, parse, random_diagram, save)
from .counterexample import (CounterexampleParams, CounterexampleReport, boundary_cells, checked_theta,
                             chi, counterexample_power, delta_block, make_counterexample, psi,
                             psi_independent, rho)
from .thompson import (IDENTITY, TreePair, f_element, f_treepair, generator, parse_f_word,
                       random_f_word, split_diagram, theta, treepair_mul, word_diagram)
