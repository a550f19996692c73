# MAHH Jump laboratory
# Exact level chains, bounds and seeded Monte Carlo runs
