# This file makes the 'hp_modules' directory a Python package.
