# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from .utils import *
