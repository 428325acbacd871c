"""Unit tests for the simulator: engines, flows, protocols, services and command line"""
