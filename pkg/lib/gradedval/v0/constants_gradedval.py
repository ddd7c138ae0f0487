# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""In this file we declare the constants and defaults used by the library and the CLI."""

# The unique library identifier, never change it
LIBID = "7d1e2f3a4b5c4d6e9f8a7b6c5d4e3f2a"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


ToolName = "gradedval"

# search / enumeration bounds
DefaultPoolExponent = 3
MaxGroupOrder = 64
MaxRootOfUnityOrder = 48
MaxKummerDegree = 4

# property sampling
DefaultSampleSize = 500
DefaultSampleSeed = 20240229
DefaultPerturbedTables = 100
MaxPerturbationDraws = 64
DefaultRandomGroups = 24
DefaultRandomExtensions = 50

# config sections, in resolution order
ConfigSections = [
    "fields",
    "lattices",
    "graded_fields",
    "extensions",
    "valuations",
    "groups",
    "models",
]

# exit codes
ExitSuccess = 0
ExitMathFailure = 1
ExitUsageError = 2

# messages
UnresolvedNameMessage = "Unknown {kind} '{name}' referenced by '{owner}'."
DuplicateNameMessage = "The name '{name}' is defined more than once."
