#!/usr/bin/env python
# -*- coding: utf-8 -*-
__author__ = "kapitza developers"
__version__ = "0.1.0"
