"""Backend module - engines, protocols, flows and analysis services"""
