def pytest_configure(config):
    config.addinivalue_line("markers", "slow: variantes de tamaño completo; omitir con -m 'not slow'")
