# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.
# '''
# In this file we define the schema for the run configuration
# that is passed to an instance of the Validator in core/config.py.
# Ranges are inclusive strings A..B.
# '''

{
    'command': {
        'required': True,
        'type': 'string',
        'allowed': ['spectrum', 'check-polya', 'bounds', 'certify', 'averages', 'scan-theta', 'wedge',
                    'remainders', 'functional'],
    },

    'manifold': {
        'required': True,
        'type': 'dict',
        'schema': {
            'kind': {'type': 'string', 'allowed': ['sphere', 'hemisphere', 'wedge'], 'default': 'hemisphere'},
            'n': {'required': True, 'type': 'integer', 'min': 2},
            'p': {'type': 'integer', 'min': 1, 'default': 1},
        }
    },

    'k_range': {'type': 'string', 'nullable': True, 'default': None, 'regex': r'^\s*-?\d+\s*\.\.\s*-?\d+\s*$'},
    'K_range': {'type': 'string', 'nullable': True, 'default': None, 'regex': r'^\s*-?\d+\s*\.\.\s*-?\d+\s*$'},

    'bits': {'type': 'integer', 'min': 53, 'default': 192},
    'tol': {'type': 'number', 'nullable': True, 'default': None, 'min': 0},

    'format': {'type': 'string', 'allowed': ['csv', 'json'], 'default': 'csv'},
    'out': {'type': 'string', 'nullable': True, 'default': None},
    'jobs': {'type': 'integer', 'min': 1, 'default': 1},

    'names': {'type': 'list', 'schema': {'type': 'string'}, 'default': []},
    'certificate': {'type': 'string', 'allowed': ['qn', 'qtheta', 'mr'], 'default': 'qtheta'},
    'order': {'type': 'integer', 'min': 1, 'default': 3},
    'mode': {'type': 'string', 'allowed': ['chain', 'total', 'min-chain'], 'default': 'chain'},
    'K_bound': {'type': 'integer', 'min': 2, 'default': 300},
    'sharpness': {'type': 'string', 'nullable': True, 'default': None, 'allowed': ['k_minus', 'k_plus', 'all']},
    'remainder': {'type': 'string', 'nullable': True, 'default': None,
                  'allowed': ['tilde_minus', 'hat_minus', 'minus', 'plus']},
    'functional': {'type': 'string', 'allowed': ['R', 'Phi', 'Theta', 'Omega', 'Psi', 'PolJ'], 'default': 'Theta'},
    'offset': {'type': 'integer', 'nullable': True, 'default': None, 'min': 0},
}
