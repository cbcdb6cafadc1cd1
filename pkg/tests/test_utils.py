# -*- coding: utf-8 -*-

import unittest

import pyparsing

from .context import (
    DEFAULT_LIMITS,
    current_limits,
    derive_seed,
    format_parse_error,
    limits,
    random_coefficients,
)
from trimcc.polynomial import GRAMMAR
from trimcc.settings import COEFFICIENT_RANGE


class UtilsTestSuite(unittest.TestCase):

    def test_format_parse_error(self):
        text = 'x0 + * x1'
        with self.assertRaises(pyparsing.ParseException) as context:
            GRAMMAR.parseString(text, parseAll=True)

        result = format_parse_error(text, context.exception)
        lines = result.split('\n')
        self.assertEqual(lines[0], 'x0 + * x1')
        self.assertEqual(lines[1].strip(), '^')
        self.assertEqual(
            lines[1].index('^'), context.exception.col - 1)
        self.assertEqual(lines[2], str(context.exception))

    def test_derive_seed(self):
        self.assertEqual(derive_seed(0, 'polar'), derive_seed(0, 'polar'))
        self.assertNotEqual(derive_seed(0, 'polar'), derive_seed(1, 'polar'))
        self.assertNotEqual(derive_seed(0, 'a', 1), derive_seed(0, 'a', 2))

    def test_random_coefficients(self):
        for seed in range(20):
            coefficients = random_coefficients(seed, 3)
            self.assertEqual(len(coefficients), 3)
            self.assertTrue(any(coefficients))
            self.assertTrue(
                all(abs(c) <= COEFFICIENT_RANGE for c in coefficients))
        self.assertEqual(random_coefficients(7, 4), random_coefficients(7, 4))

    def test_limits(self):
        self.assertEqual(current_limits(), DEFAULT_LIMITS)
        with limits(max_gb_steps=10, max_saturation_iters=None) as installed:
            self.assertEqual(installed.max_gb_steps, 10)
            self.assertEqual(
                current_limits().max_saturation_iters,
                DEFAULT_LIMITS.max_saturation_iters)
            with limits(max_slice_attempts=2):
                self.assertEqual(current_limits().max_gb_steps, 10)
                self.assertEqual(current_limits().max_slice_attempts, 2)
            self.assertEqual(
                current_limits().max_slice_attempts,
                DEFAULT_LIMITS.max_slice_attempts)
        self.assertEqual(current_limits(), DEFAULT_LIMITS)
