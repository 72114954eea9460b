# Minfact server
