"""Frontend module - command-line interface"""
