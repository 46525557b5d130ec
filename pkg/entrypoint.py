#!/usr/bin/env python3
# Copyright (c) 2026, nearfield-noise contributors

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from nearfield.cli import main

sys.exit(main())
