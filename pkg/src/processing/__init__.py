"""Run orchestration: worker pool, run configuration, figure presets and oracle verification"""
