# Shared Model Tests