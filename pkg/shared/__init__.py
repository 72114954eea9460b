# Shared types, configuration and utilities of the minfact packages
