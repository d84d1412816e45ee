from hypothesis import settings

# scipy and LAPACK calls make the first examples slow to warm up
settings.register_profile('graphentropy', deadline=None)
settings.load_profile('graphentropy')
